//! Explicit cocycles: carries of Alexander extensions, the integral dihedral
//! cocycle, obstruction cocycles of short exact sequences and lifts from
//! first-cohomology coefficients.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::chain::{is_degenerate, Cochain, Complex, Tuple, Variant};
use crate::coeff::{AlexanderRing, RingElem};
use crate::error::{Error, Result};
use crate::exactlin::{solve_linear, IntMatrix};
use crate::quandle::{FiniteQuandle, QuandleMap};

/// A 2-cocycle together with the quandle and ring it lives on.
#[derive(Clone, Debug)]
pub struct ExtensionCocycle {
    pub base: AlexanderRing,
    pub quandle: FiniteQuandle,
    pub values: AlexanderRing,
    pub total: AlexanderRing,
    pub phi: Cochain,
}

fn big_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn ring_with(modulus: u64, h: &[BigInt]) -> Result<AlexanderRing> {
    AlexanderRing::from_big(modulus, h.to_vec())
}

fn verify_tq(x: &FiniteQuandle, ring: &AlexanderRing, phi: &Cochain) -> Result<()> {
    Complex::new(x.clone(), ring.clone(), Variant::Tq)
        .is_cocycle(phi)
        .map_err(Error::NotCocycle)
}

/// Carry cocycle of `Z_{p^m}[T]/(h)` over `Z_{p^(m-1)}[T]/(h)` with values in `Z_p[T]/(h)`.
pub fn modular_extension_cocycle(p: u64, m: u32, h: &[i64]) -> Result<ExtensionCocycle> {
    if p < 2 || m < 2 {
        return Err(Error::Invalid(format!("need p >= 2 and m >= 2, got p={p}, m={m}")));
    }
    let low = p.checked_pow(m - 1).ok_or_else(|| Error::Invalid("modulus overflow".into()))?;
    let top = low.checked_mul(p).ok_or_else(|| Error::Invalid("modulus overflow".into()))?;
    let hb = big_vec(h);
    let total = ring_with(top, &hb)?;
    let base = ring_with(low, &hb)?;
    let values = ring_with(p, &hb)?;
    let quandle = FiniteQuandle::alexander(&base)?;
    let elems = base.enumerate()?;
    let lowb = BigInt::from(low);

    let mut phi = BTreeMap::new();
    for (i, a) in elems.iter().enumerate() {
        for (j, b) in elems.iter().enumerate() {
            let prod = total.quandle_op(&total.from_poly(a.coeffs()), &total.from_poly(b.coeffs()));
            let digits: Vec<BigInt> = prod.coeffs().iter().map(|c| c.div_floor(&lowb)).collect();
            phi.insert(vec![i, j], values.from_poly(&digits));
        }
    }
    let phi = Cochain::from_values(2, &values, phi);
    verify_tq(&quandle, &values, &phi)?;
    Ok(ExtensionCocycle { base, quandle, values, total, phi })
}

/// `a b mod p`, lowest power first.
fn poly_mul(a: &[BigInt], b: &[BigInt], p: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out.iter().map(|c| c.mod_floor(p)).collect()
}

/// Quotient of `a` by a monic `b` over `Z_p`.
fn poly_div(a: &[BigInt], b: &[BigInt], p: &BigInt) -> Vec<BigInt> {
    let db = b.len() - 1;
    if a.len() <= db {
        return vec![BigInt::zero()];
    }
    let mut rem = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let c = rem[k + db].mod_floor(p);
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= &c * bj;
        }
        q[k] = c;
    }
    q
}

/// Top `h`-adic digit cocycle of `Z_p[T]/(h^m)` over `Z_p[T]/(h^(m-1))` with values in `Z_p[T]/(h)`.
pub fn polynomial_extension_cocycle(p: u64, h: &[i64], m: u32) -> Result<ExtensionCocycle> {
    if p < 2 || m < 2 {
        return Err(Error::Invalid(format!("need p >= 2 and m >= 2, got p={p}, m={m}")));
    }
    let values = ring_with(p, &big_vec(h))?;
    let pb = BigInt::from(p);
    let hm = values.h().to_vec();
    let mut pow = vec![BigInt::one()];
    for _ in 0..m - 1 {
        pow = poly_mul(&pow, &hm, &pb);
    }
    let base = ring_with(p, &pow)?;
    let total = ring_with(p, &poly_mul(&pow, &hm, &pb))?;
    let quandle = FiniteQuandle::alexander(&base)?;
    let elems = base.enumerate()?;

    let mut phi = BTreeMap::new();
    for (i, a) in elems.iter().enumerate() {
        for (j, b) in elems.iter().enumerate() {
            let prod = total.quandle_op(&total.from_poly(a.coeffs()), &total.from_poly(b.coeffs()));
            let digit = poly_div(prod.coeffs(), &pow, &pb);
            phi.insert(vec![i, j], values.from_poly(&digit));
        }
    }
    let phi = Cochain::from_values(2, &values, phi);
    verify_tq(&quandle, &values, &phi)?;
    Ok(ExtensionCocycle { base, quandle, values, total, phi })
}

/// Carry of `2b - a` on `R_n`, with values in any ring containing the integers.
pub fn dihedral_integral_cocycle(n: usize, ring: &AlexanderRing) -> Result<Cochain> {
    if n < 2 {
        return Err(Error::Invalid(format!("need n >= 2, got {n}")));
    }
    let mut phi = BTreeMap::new();
    for a in 0..n {
        for b in 0..n {
            let v = if 2 * b < a {
                -1
            } else if 2 * b < n + a {
                0
            } else {
                1
            };
            phi.insert(vec![a, b], ring.from_int(v));
        }
    }
    Ok(Cochain::from_values(2, ring, phi))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Section {
    /// Least representative of each coset in enumeration order.
    Least,
    /// Greatest representative, except `s(0) = 0`.
    Greatest,
}

/// `0 -> N -> G -> A -> 0` with `A` identified with `G/N` by coefficient reduction.
#[derive(Clone, Debug)]
pub struct SesSpec {
    g: AlexanderRing,
    a: AlexanderRing,
    n: BTreeSet<RingElem>,
    n_gens: Vec<RingElem>,
    reps: Vec<RingElem>,
    section: Section,
}

impl SesSpec {
    pub fn new(g: AlexanderRing, n_gens: &[RingElem], a: AlexanderRing) -> Result<Self> {
        for x in n_gens {
            g.check(x)?;
        }
        let elems = g.enumerate()?;
        let mut n = BTreeSet::new();
        n.insert(g.zero());
        let mut frontier: Vec<RingElem> = vec![g.zero()];
        while let Some(x) = frontier.pop() {
            let mut next: Vec<RingElem> = n_gens.iter().map(|y| g.add(&x, y)).collect();
            next.push(g.t_mul(&x));
            for y in next {
                if n.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }

        let project = |x: &RingElem| a.from_poly(x.coeffs());
        let a_size = a.size().ok_or(Error::InfiniteRing)?;
        let mut least: Vec<Option<RingElem>> = vec![None; a_size];
        for x in &elems {
            let i = a.index_of(&project(x))?;
            if least[i].is_none() {
                least[i] = Some(x.clone());
            }
        }
        let reps: Vec<RingElem> = least
            .into_iter()
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Section("coefficient reduction G -> A is not onto".into()))?;
        if elems.len() != reps.len() * n.len() {
            return Err(Error::Section(format!(
                "|G| = {} but |A| |N| = {} * {}",
                elems.len(),
                reps.len(),
                n.len()
            )));
        }
        for x in &n {
            if !project(x).is_zero() {
                return Err(Error::Section(format!("{x} lies in N but not in the kernel of G -> A")));
            }
        }
        for x in &elems {
            if project(&g.t_mul(x)) != a.t_mul(&project(x)) {
                return Err(Error::Section(format!("reduction does not commute with T at {x}")));
            }
        }
        Ok(SesSpec { g, a, n, n_gens: n_gens.to_vec(), reps, section: Section::Least })
    }

    pub fn with_section(mut self, section: Section) -> Self {
        self.section = section;
        self
    }

    pub fn g(&self) -> &AlexanderRing {
        &self.g
    }

    pub fn a(&self) -> &AlexanderRing {
        &self.a
    }

    pub fn n_elements(&self) -> impl Iterator<Item = &RingElem> {
        self.n.iter()
    }

    pub fn in_n(&self, x: &RingElem) -> bool {
        self.n.contains(x)
    }

    pub fn project(&self, x: &RingElem) -> RingElem {
        self.a.from_poly(x.coeffs())
    }

    /// Lift of an element of `A`.
    pub fn section(&self, a: &RingElem) -> RingElem {
        let i = self.a.index_of(a).expect("element of A");
        match self.section {
            Section::Least => self.reps[i].clone(),
            Section::Greatest => {
                if a.is_zero() {
                    return self.g.zero();
                }
                let base = &self.reps[i];
                self.n.iter().map(|y| self.g.add(base, y)).max_by_key(|z| self.g.index_of(z).unwrap()).unwrap()
            }
        }
    }

    fn lift(&self, f: &Cochain) -> Cochain {
        f.map_values(&self.g, |v| self.section(v))
    }

    fn check_in_n(&self, f: &Cochain) -> Result<()> {
        match f.values().iter().find(|(_, v)| !self.in_n(v)) {
            Some((t, v)) => Err(Error::Section(format!("value {v} at {t:?} escapes N"))),
            None => Ok(()),
        }
    }

    /// `eta` is a map into the Alexander quandle of `A`, by enumeration index.
    pub fn obstruction_2cocycle(&self, x: &FiniteQuandle, eta: &QuandleMap) -> Result<Cochain> {
        let aq = FiniteQuandle::alexander(&self.a)?;
        if let Err((p, q)) = eta.is_homomorphism(x, &aq) {
            return Err(Error::Invalid(format!("eta is not a homomorphism at ({p},{q})")));
        }
        let g = &self.g;
        let s = |i: usize| self.section(&self.a.element_at(eta.values[i]));
        let mut out = BTreeMap::new();
        for x1 in 0..x.size() {
            for x2 in 0..x.size() {
                let v = g.add(&g.t_mul(&s(x1)), &g.sub(&s(x2), &g.t_mul(&s(x2))));
                out.insert(vec![x1, x2], g.sub(&v, &s(x.op(x1, x2))));
            }
        }
        let phi = Cochain::from_values(2, g, out);
        self.check_in_n(&phi)?;
        verify_tq(x, g, &phi)?;
        Ok(phi)
    }

    /// `phi` is a 2-cocycle with values in `A`.
    pub fn obstruction_3cocycle(&self, x: &FiniteQuandle, phi: &Cochain) -> Result<Cochain> {
        if phi.degree() != 2 {
            return Err(Error::DegreeMismatch { expected: 2, got: phi.degree() });
        }
        verify_tq(x, &self.a, phi)?;
        let g = &self.g;
        let sphi = self.lift(phi);
        let v = |a: usize, b: usize| sphi.value(&[a, b], g);
        let mut out = BTreeMap::new();
        let q = x.size();
        for x1 in 0..q {
            for x2 in 0..q {
                for x3 in 0..q {
                    let lhs = g.add(
                        &g.add(&g.t_mul(&v(x1, x2)), &v(x.op(x1, x2), x3)),
                        &g.t_mul(&v(x2, x3)),
                    );
                    let rhs = g.add(
                        &g.add(&v(x2, x3), &g.t_mul(&v(x1, x3))),
                        &v(x.op(x1, x3), x.op(x2, x3)),
                    );
                    out.insert(vec![x1, x2, x3], g.sub(&lhs, &rhs));
                }
            }
        }
        let theta = Cochain::from_values(3, g, out);
        self.check_in_n(&theta)?;
        verify_tq(x, g, &theta)?;
        Ok(theta)
    }

    /// `xi` with values in `N` and `delta xi = phi`, if one exists.
    pub fn n_primitive(&self, x: &FiniteQuandle, phi: &Cochain) -> Option<Cochain> {
        let n = phi.degree();
        if n == 0 {
            return phi.is_zero().then(|| Cochain::zero(0));
        }
        let g = &self.g;
        let cx = Complex::new(x.clone(), g.clone(), Variant::Tq);
        let mut gens = Vec::new();
        for y in &self.n_gens {
            let mut z = y.clone();
            for _ in 0..g.degree() {
                gens.push(z.clone());
                z = g.t_mul(&z);
            }
        }
        let mut cols = Vec::new();
        let mut labels = Vec::new();
        for t in cx.basis(n - 1) {
            for e in &gens {
                let f = Cochain::from_values(n - 1, g, [(t.clone(), e.clone())]);
                cols.push(cx.cochain_to_vec(&cx.delta(&f)));
                labels.push((t.clone(), e.clone()));
            }
        }
        let target = cx.cochain_to_vec(phi);
        let m = IntMatrix::from_columns(target.len(), &cols);
        let c = solve_linear(&m, &target, g.modulus())?;
        let mut xi = Cochain::zero(n - 1);
        for ((t, e), k) in labels.into_iter().zip(c) {
            if !k.is_zero() {
                xi = xi.add(&Cochain::from_values(n - 1, g, [(t, g.scale(&k, &e))]), g);
            }
        }
        Some(xi)
    }

    /// A homomorphism `X -> G` over `eta`, found when the obstruction vanishes.
    pub fn extend(&self, x: &FiniteQuandle, eta: &QuandleMap) -> Result<Option<QuandleMap>> {
        let phi = self.obstruction_2cocycle(x, eta)?;
        let Some(xi) = self.n_primitive(x, &phi) else {
            return Ok(None);
        };
        let g = &self.g;
        let values = (0..x.size())
            .map(|i| {
                let s = self.section(&self.a.element_at(eta.values[i]));
                g.index_of(&g.sub(&s, &xi.value(&[i], g)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Some(QuandleMap::new(values)))
    }
}

/// `xi(t)(y)` for `n`-tuples `t`, as a table of functions `X -> A`.
pub type H1Table = BTreeMap<Tuple, Vec<RingElem>>;

#[derive(Clone, Debug)]
pub struct Lift {
    pub psi: Cochain,
    pub in_tq: bool,
}

fn tuples(q: usize, n: usize) -> Vec<Tuple> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..q).map(move |y| {
                    let mut s = t.clone();
                    s.push(y);
                    s
                })
            })
            .collect();
    }
    out
}

/// Fills a table from seed values by equivariance, the homomorphism rule and
/// vanishing on degenerate tuples.
pub fn propagate_seeds(x: &FiniteQuandle, ring: &AlexanderRing, n: usize, seeds: &[(Tuple, usize, RingElem)]) -> Result<H1Table> {
    let q = x.size();
    let mut val: BTreeMap<(Tuple, usize), RingElem> = BTreeMap::new();
    let mut queue: Vec<(Tuple, usize, RingElem)> = Vec::new();
    for (t, y, v) in seeds {
        if t.len() != n || *y >= q || t.iter().any(|&z| z >= q) {
            return Err(Error::Lift(format!("seed at {t:?}({y}) is out of range")));
        }
        ring.check(v)?;
        queue.push((t.clone(), *y, v.clone()));
    }
    for t in tuples(q, n) {
        for y in 0..q {
            let mut full = t.clone();
            full.push(y);
            if is_degenerate(&full) {
                queue.push((t.clone(), y, ring.zero()));
            }
        }
    }
    let one_minus_t = ring.sub(&ring.one(), &ring.t());

    loop {
        while let Some((t, y, v)) = queue.pop() {
            match val.get(&(t.clone(), y)) {
                Some(old) if *old == v => continue,
                Some(old) => {
                    return Err(Error::Lift(format!("conflict at {t:?}({y}): {old} vs {v}")));
                }
                None => {}
            }
            val.insert((t.clone(), y), v.clone());
            for z in 0..q {
                let fwd: Tuple = t.iter().map(|&a| x.op(a, z)).collect();
                queue.push((fwd, x.op(y, z), ring.t_mul(&v)));
                let back: Tuple = t.iter().map(|&a| x.op_inv(a, z)).collect();
                queue.push((back, x.op_inv(y, z), ring.mul(ring.t_inv(), &v)));
            }
        }
        // homomorphism rule: f(a*b) = T f(a) + (1 - T) f(b)
        for t in tuples(q, n) {
            for a in 0..q {
                for b in 0..q {
                    let fa = val.get(&(t.clone(), a));
                    let fb = val.get(&(t.clone(), b));
                    let fab = val.get(&(t.clone(), x.op(a, b)));
                    match (fa, fb, fab) {
                        (Some(fa), Some(fb), None) => {
                            let v = ring.add(&ring.t_mul(fa), &ring.mul(&one_minus_t, fb));
                            queue.push((t.clone(), x.op(a, b), v));
                        }
                        (None, Some(fb), Some(fab)) => {
                            let v = ring.mul(ring.t_inv(), &ring.sub(fab, &ring.mul(&one_minus_t, fb)));
                            queue.push((t.clone(), a, v));
                        }
                        _ => {}
                    }
                }
            }
        }
        if queue.is_empty() {
            break;
        }
    }

    let mut table = H1Table::new();
    for t in tuples(q, n) {
        let mut row = Vec::with_capacity(q);
        for y in 0..q {
            let v = val
                .get(&(t.clone(), y))
                .ok_or_else(|| Error::Lift(format!("seeds leave {t:?}({y}) undetermined")))?;
            row.push(v.clone());
        }
        table.insert(t, row);
    }
    Ok(table)
}

/// `psi(x_1, ..., x_{n+1}) = xi(x_1, ..., x_n)(x_{n+1})`, after validating `xi`.
pub fn lift_h1(x: &FiniteQuandle, ring: &AlexanderRing, n: usize, xi: &H1Table) -> Result<Lift> {
    let q = x.size();
    let get = |t: &[usize], y: usize| -> Result<RingElem> {
        xi.get(t)
            .and_then(|row| row.get(y))
            .cloned()
            .ok_or_else(|| Error::Lift(format!("xi{t:?}({y}) missing")))
    };
    let one_minus_t = ring.sub(&ring.one(), &ring.t());
    for t in tuples(q, n) {
        for a in 0..q {
            for b in 0..q {
                let want = ring.add(&ring.t_mul(&get(&t, a)?), &ring.mul(&one_minus_t, &get(&t, b)?));
                if get(&t, x.op(a, b))? != want {
                    return Err(Error::Lift(format!("xi{t:?} is not a homomorphism at ({a},{b})")));
                }
            }
        }
        for y in 0..q {
            for z in 0..q {
                let moved: Tuple = t.iter().map(|&a| x.op(a, z)).collect();
                if get(&moved, x.op(y, z))? != ring.t_mul(&get(&t, y)?) {
                    return Err(Error::Lift(format!("equivariance fails at {t:?}({y}) acted on by {z}")));
                }
            }
        }
    }

    let tq = Complex::new(x.clone(), ring.clone(), Variant::Tq);
    for z in 0..q {
        let mut slice = BTreeMap::new();
        for t in tuples(q, n) {
            let v = get(&t, z)?;
            if is_degenerate(&t) && !v.is_zero() {
                return Err(Error::Lift(format!("xi{t:?}({z}) must vanish on a degenerate tuple")));
            }
            slice.insert(t, v);
        }
        let slice = Cochain::from_values(n, ring, slice);
        if let Err(w) = tq.is_cocycle(&slice) {
            return Err(Error::Lift(format!("xi is not a cocycle: slice at {z} fails at {w:?}")));
        }
    }

    let mut values = BTreeMap::new();
    for t in tuples(q, n) {
        for y in 0..q {
            let mut full = t.clone();
            full.push(y);
            values.insert(full, get(&t, y)?);
        }
    }
    let psi = Cochain::from_values(n + 1, ring, values);
    let tr = Complex::new(x.clone(), ring.clone(), Variant::Tr);
    if let Err(w) = tr.is_cocycle(&psi) {
        return Err(Error::Lift(format!("psi fails the cocycle condition at {w:?}")));
    }
    let in_tq = tq.is_cocycle(&psi).is_ok();
    Ok(Lift { psi, in_tq })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: u64) -> AlexanderRing {
        AlexanderRing::new(n, &[1, 1]).unwrap()
    }

    #[test]
    fn modular_three_two() {
        let e = modular_extension_cocycle(3, 2, &[1, 1]).unwrap();
        let want = Cochain::from_chi(2, &e.values, &[(&[0, 2], 1), (&[1, 2], 1), (&[1, 0], 2), (&[2, 0], 2)]);
        assert_eq!(e.phi, want);
        let ext = FiniteQuandle::extension(&e.quandle, &e.values, &e.phi).unwrap();
        let big = FiniteQuandle::alexander(&e.total).unwrap();
        assert!(crate::quandle::find_isomorphism(&ext, &big).is_some());
    }

    #[test]
    fn modular_two_two_is_cocycle() {
        let e = modular_extension_cocycle(2, 2, &[1, 1]).unwrap();
        for a in 0..e.quandle.size() {
            assert!(e.phi.value(&[a, a], &e.values).is_zero());
        }
    }

    #[test]
    fn polynomial_three() {
        let e = polynomial_extension_cocycle(3, &[1, 1], 2).unwrap();
        let want = Cochain::from_chi(
            2,
            &e.values,
            &[(&[0, 1], 2), (&[0, 2], 1), (&[1, 0], 1), (&[1, 2], 2), (&[2, 0], 2), (&[2, 1], 1)],
        );
        assert_eq!(e.phi, want);
        assert!(polynomial_extension_cocycle(2, &[1, 1], 2).is_ok());
    }

    #[test]
    fn non_unit_coefficients_rejected() {
        assert!(modular_extension_cocycle(3, 2, &[3, 1]).is_err());
        assert!(polynomial_extension_cocycle(3, &[1, 3], 2).is_err());
    }

    #[test]
    fn dihedral_values() {
        let z = r(0);
        let phi = dihedral_integral_cocycle(3, &z).unwrap();
        let want = Cochain::from_chi(2, &z, &[(&[0, 2], 1), (&[1, 2], 1), (&[1, 0], -1), (&[2, 0], -1)]);
        assert_eq!(phi, want);
        let phi5 = dihedral_integral_cocycle(5, &z).unwrap();
        assert_eq!(phi5.value(&[4, 0], &z), z.from_int(-1));
        let cx = Complex::new(FiniteQuandle::dihedral(5), z, Variant::Tq);
        assert_eq!(cx.is_cocycle(&phi5), Ok(()));
    }

    fn z9() -> SesSpec {
        let g = r(9);
        SesSpec::new(g.clone(), &[g.from_int(3)], r(3)).unwrap()
    }

    #[test]
    fn ses_basics() {
        let s = z9();
        assert_eq!(s.n_elements().count(), 3);
        assert_eq!(s.section(&s.a().from_int(2)), s.g().from_int(2));
        let alt = s.clone().with_section(Section::Greatest);
        assert_eq!(alt.section(&s.a().from_int(2)), s.g().from_int(8));
        assert!(alt.section(&s.a().zero()).is_zero());
        let g = r(9);
        assert!(matches!(SesSpec::new(g.clone(), &[g.from_int(3)], r(5)), Err(Error::Section(_))));
    }

    #[test]
    fn obstruction_matches_carry() {
        let s = z9();
        let x = FiniteQuandle::dihedral(3);
        let phi = s.obstruction_2cocycle(&x, &QuandleMap::identity(3)).unwrap();
        let carry = modular_extension_cocycle(3, 2, &[1, 1]).unwrap().phi;
        // N = 3 Z_9 carries the digit in its second place
        let scaled = carry.map_values(s.g(), |v| s.g().scale(&BigInt::from(3), &s.g().from_poly(v.coeffs())));
        let diff = phi.sub(&scaled, s.g());
        assert!(s.n_primitive(&x, &diff).is_some());
        assert_eq!(s.extend(&x, &QuandleMap::identity(3)).unwrap(), None);
    }

    #[test]
    fn zero_eta_gives_zero() {
        let s = z9();
        let x = FiniteQuandle::dihedral(3);
        assert!(s.obstruction_2cocycle(&x, &QuandleMap::new(vec![0, 0, 0])).unwrap().is_zero());
        assert!(s.obstruction_3cocycle(&x, &Cochain::zero(2)).unwrap().is_zero());
    }

    #[test]
    fn extension_over_fifteen() {
        let g = r(15);
        let s = SesSpec::new(g.clone(), &[g.from_int(3)], r(3)).unwrap();
        let x = FiniteQuandle::dihedral(3);
        let lift = s.extend(&x, &QuandleMap::identity(3)).unwrap().expect("obstruction vanishes");
        let gq = FiniteQuandle::alexander(&g).unwrap();
        assert_eq!(lift.is_homomorphism(&x, &gq), Ok(()));
        for i in 0..3 {
            assert_eq!(s.project(&g.element_at(lift.values[i])), s.a().element_at(i));
        }
    }

    #[test]
    fn section_choice_is_cohomologous() {
        let s = z9();
        let x = FiniteQuandle::dihedral(3);
        let eta = QuandleMap::identity(3);
        let a = s.obstruction_2cocycle(&x, &eta).unwrap();
        let b = s.clone().with_section(Section::Greatest).obstruction_2cocycle(&x, &eta).unwrap();
        assert!(s.n_primitive(&x, &a.sub(&b, s.g())).is_some());
    }

    #[test]
    fn three_cocycle_over_twenty_seven() {
        let g = r(27);
        let s = SesSpec::new(g.clone(), &[g.from_int(3)], r(3)).unwrap();
        let x = FiniteQuandle::dihedral(3);
        let phi = modular_extension_cocycle(3, 2, &[1, 1]).unwrap().phi;
        let theta = s.obstruction_3cocycle(&x, &phi).unwrap();
        let cx = Complex::new(x.clone(), g.clone(), Variant::Tq);
        let sphi = phi.map_values(&g, |v| s.section(v));
        assert_eq!(theta, cx.delta(&sphi));
    }

    #[test]
    fn lift_degree_one() {
        let x = FiniteQuandle::dihedral(3);
        let a = r(3);
        let table = propagate_seeds(&x, &a, 1, &[(vec![0], 1, a.one())]).unwrap();
        let lift = lift_h1(&x, &a, 1, &table).unwrap();
        let want = Cochain::from_chi(
            2,
            &a,
            &[(&[0, 1], 1), (&[1, 2], 1), (&[2, 0], 1), (&[0, 2], 2), (&[2, 1], 2), (&[1, 0], 2)],
        );
        assert_eq!(lift.psi, want);
        assert!(lift.in_tq);
    }

    #[test]
    fn lift_degree_two() {
        let x = FiniteQuandle::dihedral(3);
        let a = r(3);
        let table = propagate_seeds(&x, &a, 2, &[(vec![0, 1], 0, a.one())]).unwrap();
        let lift = lift_h1(&x, &a, 2, &table).unwrap();
        let plus: [&[usize]; 6] = [&[0, 1, 0], &[2, 0, 2], &[1, 2, 1], &[0, 2, 1], &[2, 1, 0], &[1, 0, 2]];
        let minus: [&[usize]; 6] = [&[0, 2, 0], &[2, 1, 2], &[1, 0, 1], &[0, 1, 2], &[2, 0, 1], &[1, 2, 0]];
        let terms: Vec<(&[usize], i64)> = plus.iter().map(|t| (*t, 1)).chain(minus.iter().map(|t| (*t, -1))).collect();
        assert_eq!(lift.psi, Cochain::from_chi(3, &a, &terms));
        let cx = Complex::new(x, a, Variant::Tq);
        assert!(cx.is_coboundary(&lift.psi).is_none());
    }

    #[test]
    fn lift_zero_and_rejections() {
        let x = FiniteQuandle::dihedral(3);
        let a = r(3);
        let zero: H1Table = tuples(3, 1).into_iter().map(|t| (t, vec![a.zero(); 3])).collect();
        assert!(lift_h1(&x, &a, 1, &zero).unwrap().psi.is_zero());
        let mut bad = zero.clone();
        bad.insert(vec![0], vec![a.zero(), a.one(), a.from_int(2)]);
        assert!(matches!(lift_h1(&x, &a, 1, &bad), Err(Error::Lift(_))));
        assert!(propagate_seeds(&x, &a, 1, &[(vec![0], 1, a.one()), (vec![0], 2, a.one())]).is_err());
    }
}
