//! Twisted chain and cochain complexes of a finite quandle with coefficients in
//! an Alexander ring, in the rack (TR), degenerate (TD) and quandle (TQ) variants.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::coeff::{AlexanderRing, RingElem};
use crate::error::{parse_err, Error, Result};
use crate::exactlin::{cycle_lattice, homology_segment, solve_linear, IntMatrix, ModuleInfo, Segment};
use crate::quandle::FiniteQuandle;

pub type Tuple = Vec<usize>;

pub const DEFAULT_MAX_BASIS: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Tr,
    Td,
    Tq,
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "TR" => Ok(Variant::Tr),
            "TD" => Ok(Variant::Td),
            "TQ" => Ok(Variant::Tq),
            _ => Err(parse_err("variant", format!("`{s}` is not one of TR, TD, TQ"))),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Tr => "TR",
            Variant::Td => "TD",
            Variant::Tq => "TQ",
        })
    }
}

pub fn is_degenerate(t: &[usize]) -> bool {
    t.windows(2).any(|w| w[0] == w[1])
}

/// Coefficient `c0 + c1 T` of a boundary term.
pub type Lambda = (i64, i64);

fn sparse_insert(map: &mut BTreeMap<Tuple, RingElem>, t: Tuple, v: RingElem, ring: &AlexanderRing) {
    use std::collections::btree_map::Entry;
    match map.entry(t) {
        Entry::Vacant(e) => {
            if !v.is_zero() {
                e.insert(v);
            }
        }
        Entry::Occupied(mut e) => {
            let s = ring.add(e.get(), &v);
            if s.is_zero() {
                e.remove();
            } else {
                e.insert(s);
            }
        }
    }
}

fn parse_tuple(s: &str) -> Result<Tuple> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| parse_err("tuple", format!("bad entry `{x}`"))))
        .collect()
}

fn parse_lines(text: &str, ring: &AlexanderRing, what: &'static str) -> Result<(Option<usize>, Vec<(Tuple, RingElem)>)> {
    let mut degree = None;
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let (lhs, rhs) = line
            .split_once("->")
            .ok_or_else(|| parse_err(what, format!("expected `tuple -> value` in `{line}`")))?;
        let t = parse_tuple(lhs)?;
        match degree {
            None => degree = Some(t.len()),
            Some(n) if n != t.len() => {
                return Err(parse_err(what, format!("mixed tuple lengths {n} and {}", t.len())))
            }
            _ => {}
        }
        out.push((t, ring.parse_elem(rhs)?));
    }
    Ok((degree, out))
}

fn write_lines(map: &BTreeMap<Tuple, RingElem>) -> String {
    let mut s = String::new();
    for (t, v) in map {
        let idx: Vec<String> = t.iter().map(|x| x.to_string()).collect();
        s.push_str(&format!("{} -> {}\n", idx.join(","), v));
    }
    s
}

/// A formal ring combination of `n`-tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    degree: usize,
    terms: BTreeMap<Tuple, RingElem>,
}

impl Chain {
    pub fn zero(degree: usize) -> Self {
        Chain { degree, terms: BTreeMap::new() }
    }

    pub fn from_terms(degree: usize, ring: &AlexanderRing, terms: impl IntoIterator<Item = (Tuple, RingElem)>) -> Self {
        let mut c = Chain::zero(degree);
        for (t, v) in terms {
            assert_eq!(t.len(), degree, "tuple length must equal the degree");
            sparse_insert(&mut c.terms, t, v, ring);
        }
        c
    }

    /// Integer combination such as `(1,0) - (2,0)`.
    pub fn from_ints(degree: usize, ring: &AlexanderRing, terms: &[(&[usize], i64)]) -> Self {
        Chain::from_terms(degree, ring, terms.iter().map(|(t, k)| (t.to_vec(), ring.from_int(*k))))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Tuple, RingElem> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, t: &[usize], ring: &AlexanderRing) -> RingElem {
        self.terms.get(t).cloned().unwrap_or_else(|| ring.zero())
    }

    pub fn parse(text: &str, ring: &AlexanderRing) -> Result<Self> {
        let (degree, terms) = parse_lines(text, ring, "chain")?;
        Ok(Chain::from_terms(degree.unwrap_or(0), ring, terms))
    }

    pub fn to_text(&self) -> String {
        write_lines(&self.terms)
    }
}

/// Ring-valued function on `n`-tuples; tuples not stored take the value zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    values: BTreeMap<Tuple, RingElem>,
}

impl Cochain {
    pub fn zero(degree: usize) -> Self {
        Cochain { degree, values: BTreeMap::new() }
    }

    pub fn from_values(degree: usize, ring: &AlexanderRing, values: impl IntoIterator<Item = (Tuple, RingElem)>) -> Self {
        let mut f = Cochain::zero(degree);
        for (t, v) in values {
            assert_eq!(t.len(), degree, "tuple length must equal the degree");
            sparse_insert(&mut f.values, t, v, ring);
        }
        f
    }

    /// Integer combination of characteristic functions, e.g. `chi_{0,2} + 2 chi_{1,0}`.
    pub fn from_chi(degree: usize, ring: &AlexanderRing, terms: &[(&[usize], i64)]) -> Self {
        Cochain::from_values(degree, ring, terms.iter().map(|(t, k)| (t.to_vec(), ring.from_int(*k))))
    }

    pub fn characteristic(t: &[usize], ring: &AlexanderRing) -> Self {
        Cochain::from_values(t.len(), ring, [(t.to_vec(), ring.one())])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &BTreeMap<Tuple, RingElem> {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, t: &[usize], ring: &AlexanderRing) -> RingElem {
        self.values.get(t).cloned().unwrap_or_else(|| ring.zero())
    }

    pub fn add(&self, other: &Cochain, ring: &AlexanderRing) -> Cochain {
        let mut out = self.clone();
        for (t, v) in &other.values {
            sparse_insert(&mut out.values, t.clone(), v.clone(), ring);
        }
        out
    }

    pub fn neg(&self, ring: &AlexanderRing) -> Cochain {
        Cochain::from_values(self.degree, ring, self.values.iter().map(|(t, v)| (t.clone(), ring.neg(v))))
    }

    pub fn sub(&self, other: &Cochain, ring: &AlexanderRing) -> Cochain {
        self.add(&other.neg(ring), ring)
    }

    /// Multiplies every value by `a`.
    pub fn scale(&self, a: &RingElem, ring: &AlexanderRing) -> Cochain {
        Cochain::from_values(self.degree, ring, self.values.iter().map(|(t, v)| (t.clone(), ring.mul(a, v))))
    }

    /// Moves values into another ring through `f`.
    pub fn map_values(&self, target: &AlexanderRing, f: impl Fn(&RingElem) -> RingElem) -> Cochain {
        Cochain::from_values(self.degree, target, self.values.iter().map(|(t, v)| (t.clone(), f(v))))
    }

    pub fn parse(text: &str, ring: &AlexanderRing) -> Result<Self> {
        let (degree, values) = parse_lines(text, ring, "cochain")?;
        Ok(Cochain::from_values(degree.unwrap_or(0), ring, values))
    }

    pub fn to_text(&self) -> String {
        write_lines(&self.values)
    }
}

/// Invariant factors and an explicit cocycle basis.
#[derive(Clone, Debug)]
pub struct CohomologyInfo {
    pub module: ModuleInfo,
    pub generators: Vec<Cochain>,
    pub cocycle_basis: Vec<Cochain>,
}

/// The complex `C_*^W(X; A)` for one variant `W`.
#[derive(Clone, Debug)]
pub struct Complex {
    x: FiniteQuandle,
    ring: AlexanderRing,
    variant: Variant,
    max_basis: usize,
}

impl Complex {
    pub fn new(x: FiniteQuandle, ring: AlexanderRing, variant: Variant) -> Self {
        Complex { x, ring, variant, max_basis: DEFAULT_MAX_BASIS }
    }

    pub fn with_max_basis(mut self, limit: usize) -> Self {
        self.max_basis = limit;
        self
    }

    pub fn quandle(&self) -> &FiniteQuandle {
        &self.x
    }

    pub fn ring(&self) -> &AlexanderRing {
        &self.ring
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    fn admits(&self, t: &[usize]) -> bool {
        match self.variant {
            Variant::Tr => true,
            Variant::Td => is_degenerate(t),
            Variant::Tq => !is_degenerate(t),
        }
    }

    /// Basis tuples of degree `n` in lexicographic order.
    pub fn basis(&self, n: usize) -> Vec<Tuple> {
        let q = self.x.size();
        let total = q.checked_pow(n as u32).expect("basis size overflow");
        let mut out = Vec::new();
        for mut code in 0..total {
            let mut t = vec![0; n];
            for slot in t.iter_mut().rev() {
                *slot = code % q;
                code /= q;
            }
            if self.admits(&t) {
                out.push(t);
            }
        }
        out
    }

    fn basis_index(&self, n: usize) -> HashMap<Tuple, usize> {
        self.basis(n).into_iter().enumerate().map(|(i, t)| (t, i)).collect()
    }

    fn guard(&self, n: usize) -> Result<usize> {
        let q = self.x.size();
        let size = q
            .checked_pow(n as u32)
            .and_then(|s| s.checked_mul(self.ring.degree()))
            .unwrap_or(usize::MAX);
        if size > self.max_basis {
            return Err(Error::ResourceGuard { size, limit: self.max_basis });
        }
        Ok(size)
    }

    /// `d(x_1..x_n)` in the rack complex, with coefficients `c0 + c1 T`.
    pub fn raw_boundary(&self, t: &[usize]) -> BTreeMap<Tuple, Lambda> {
        let mut out: BTreeMap<Tuple, Lambda> = BTreeMap::new();
        let n = t.len();
        if n <= 1 {
            return out;
        }
        for i in 0..n {
            let sign = if i % 2 == 0 { -1 } else { 1 };
            let mut del = Vec::with_capacity(n - 1);
            let mut act = Vec::with_capacity(n - 1);
            for (j, &xj) in t.iter().enumerate() {
                if j == i {
                    continue;
                }
                del.push(xj);
                act.push(if j < i { self.x.op(xj, t[i]) } else { xj });
            }
            out.entry(del).or_insert((0, 0)).1 += sign;
            out.entry(act).or_insert((0, 0)).0 -= sign;
        }
        out.retain(|_, c| *c != (0, 0));
        out
    }

    /// Boundary of a basis tuple in this variant.
    pub fn boundary_terms(&self, t: &[usize]) -> BTreeMap<Tuple, Lambda> {
        let mut m = self.raw_boundary(t);
        m.retain(|k, _| self.admits(k));
        m
    }

    fn lambda(&self, (c0, c1): Lambda, a: &RingElem) -> RingElem {
        let r = &self.ring;
        let x = r.scale(&BigInt::from(c0), a);
        let y = r.scale(&BigInt::from(c1), &r.t_mul(a));
        r.add(&x, &y)
    }

    fn lambda_block(&self, (c0, c1): Lambda) -> Vec<Vec<BigInt>> {
        let comp = self.ring.companion();
        let d = self.ring.degree();
        let mut b = vec![vec![BigInt::zero(); d]; d];
        for i in 0..d {
            for j in 0..d {
                b[i][j] = &comp[i][j] * c1;
            }
            b[i][i] += c0;
        }
        b
    }

    pub fn boundary(&self, c: &Chain) -> Result<Chain> {
        let n = c.degree;
        let mut out = Chain::zero(n.saturating_sub(1));
        for (t, a) in &c.terms {
            if t.len() != n || !self.admits(t) || t.iter().any(|&x| x >= self.x.size()) {
                return Err(Error::Foreign(format!("tuple {t:?} is not a degree-{n} {} basis element", self.variant)));
            }
            for (s, lam) in self.boundary_terms(t) {
                sparse_insert(&mut out.terms, s, self.lambda(lam, a), &self.ring);
            }
        }
        Ok(out)
    }

    /// Integer matrix of `d_n : C_n -> C_{n-1}`, each ring coefficient acting on `Z^d`.
    pub fn boundary_matrix(&self, n: usize) -> Result<IntMatrix> {
        self.guard(n)?;
        let d = self.ring.degree();
        let src = self.basis(n);
        let tgt_len = if n == 0 { 0 } else { self.basis(n - 1).len() };
        let mut m = IntMatrix::zeros(d * tgt_len, d * src.len());
        if n <= 1 {
            return Ok(m);
        }
        let tgt = self.basis_index(n - 1);
        for (j, t) in src.iter().enumerate() {
            for (s, lam) in self.boundary_terms(t) {
                let i = tgt[&s];
                let b = self.lambda_block(lam);
                for (p, row) in b.iter().enumerate() {
                    for (q, x) in row.iter().enumerate() {
                        m[(i * d + p, j * d + q)] += x;
                    }
                }
            }
        }
        Ok(m)
    }

    /// Matrix of `delta^n : C^n -> C^{n+1}`.
    pub fn coboundary_matrix(&self, n: usize) -> Result<IntMatrix> {
        self.guard(n + 1)?;
        let d = self.ring.degree();
        let src = self.basis_index(n);
        let tgt = self.basis(n + 1);
        let mut m = IntMatrix::zeros(d * tgt.len(), d * src.len());
        let sign = if n.is_multiple_of(2) { -1 } else { 1 };
        for (i, t) in tgt.iter().enumerate() {
            for (s, (c0, c1)) in self.boundary_terms(t) {
                let j = src[&s];
                let b = self.lambda_block((sign * c0, sign * c1));
                for (p, row) in b.iter().enumerate() {
                    for (q, x) in row.iter().enumerate() {
                        m[(i * d + p, j * d + q)] += x;
                    }
                }
            }
        }
        Ok(m)
    }

    /// Relation columns presenting `C_n` as an abelian group.
    pub fn relations(&self, n: usize) -> IntMatrix {
        let size = self.basis(n).len() * self.ring.degree();
        match self.ring.modulus() {
            0 => IntMatrix::zeros(size, 0),
            m => IntMatrix::scalar(size, m as i64),
        }
    }

    pub fn t_matrix(&self, n: usize) -> IntMatrix {
        let d = self.ring.degree();
        let count = self.basis(n).len();
        let comp = self.ring.companion();
        let mut m = IntMatrix::zeros(d * count, d * count);
        for k in 0..count {
            for p in 0..d {
                for q in 0..d {
                    m[(k * d + p, k * d + q)] = comp[p][q].clone();
                }
            }
        }
        m
    }

    pub fn homology(&self, n: usize) -> Result<ModuleInfo> {
        self.guard(n + 1)?;
        let d_out = if n == 0 { IntMatrix::zeros(0, self.basis(0).len() * self.ring.degree()) } else { self.boundary_matrix(n)? };
        let out_relations = if n == 0 { IntMatrix::zeros(0, 0) } else { self.relations(n - 1) };
        let seg = Segment {
            d_in: self.boundary_matrix(n + 1)?,
            d_out,
            relations: self.relations(n),
            out_relations,
            t_mat: self.t_matrix(n),
        };
        let mut info = homology_segment(&seg)?;
        self.reduce_vectors(&mut info.generators);
        Ok(info)
    }

    pub fn cohomology(&self, n: usize) -> Result<CohomologyInfo> {
        self.guard(n + 1)?;
        let width = self.basis(n).len() * self.ring.degree();
        let d_in = if n == 0 { IntMatrix::zeros(width, 0) } else { self.coboundary_matrix(n - 1)? };
        let d_out = self.coboundary_matrix(n)?;
        let out_relations = self.relations(n + 1);
        let kb = cycle_lattice(&d_out, &out_relations);
        let seg = Segment { d_in, d_out, relations: self.relations(n), out_relations, t_mat: self.t_matrix(n) };
        let mut module = homology_segment(&seg)?;
        self.reduce_vectors(&mut module.generators);
        let generators = module.generators.iter().map(|g| self.vec_to_cochain(n, g)).collect();
        let cocycle_basis = (0..kb.cols())
            .map(|j| self.vec_to_cochain(n, &kb.column(j)))
            .filter(|f| !f.is_zero())
            .collect();
        Ok(CohomologyInfo { module, generators, cocycle_basis })
    }

    fn reduce_vectors(&self, vs: &mut [Vec<BigInt>]) {
        let m = self.ring.modulus();
        if m > 0 {
            let mb = BigInt::from(m);
            for v in vs.iter_mut() {
                for x in v.iter_mut() {
                    *x = x.mod_floor(&mb);
                }
            }
        }
    }

    pub fn vec_to_cochain(&self, n: usize, v: &[BigInt]) -> Cochain {
        let d = self.ring.degree();
        let vals = self
            .basis(n)
            .into_iter()
            .enumerate()
            .map(|(i, t)| (t, self.ring.from_poly(&v[i * d..(i + 1) * d])));
        Cochain::from_values(n, &self.ring, vals)
    }

    pub fn cochain_to_vec(&self, f: &Cochain) -> Vec<BigInt> {
        self.basis(f.degree)
            .into_iter()
            .flat_map(|t| f.value(&t, &self.ring).coeffs().to_vec())
            .collect()
    }

    pub fn vec_to_chain(&self, n: usize, v: &[BigInt]) -> Chain {
        let d = self.ring.degree();
        let terms = self
            .basis(n)
            .into_iter()
            .enumerate()
            .map(|(i, t)| (t, self.ring.from_poly(&v[i * d..(i + 1) * d])));
        Chain::from_terms(n, &self.ring, terms)
    }

    pub fn chain_to_vec(&self, c: &Chain) -> Vec<BigInt> {
        self.basis(c.degree)
            .into_iter()
            .flat_map(|t| c.coefficient(&t, &self.ring).coeffs().to_vec())
            .collect()
    }

    /// `(delta f)(c) = (-1)^m f(d c)` for `c` of degree `m`.
    pub fn delta(&self, f: &Cochain) -> Cochain {
        let n = f.degree;
        let r = &self.ring;
        let mut out = Cochain::zero(n + 1);
        for t in self.basis(n + 1) {
            let mut acc = r.zero();
            for (s, lam) in self.boundary_terms(&t) {
                acc = r.add(&acc, &self.lambda(lam, &f.value(&s, r)));
            }
            if n.is_multiple_of(2) {
                acc = r.neg(&acc);
            }
            sparse_insert(&mut out.values, t, acc, r);
        }
        out
    }

    /// `Err(t)` names a tuple where `f` leaves the cochain group or `delta f` is nonzero.
    pub fn is_cocycle(&self, f: &Cochain) -> std::result::Result<(), Tuple> {
        if let Some(t) = f.values.keys().find(|t| !self.admits(t)) {
            return Err(t.clone());
        }
        match self.delta(f).values.keys().next() {
            Some(t) => Err(t.clone()),
            None => Ok(()),
        }
    }

    /// A primitive `eta` with `delta eta = f`, if one exists.
    pub fn is_coboundary(&self, f: &Cochain) -> Option<Cochain> {
        let n = f.degree;
        if f.values.keys().any(|t| !self.admits(t)) {
            return None;
        }
        if n == 0 {
            return f.is_zero().then(|| Cochain::zero(0));
        }
        let m = self.coboundary_matrix(n - 1).ok()?;
        let b = self.cochain_to_vec(f);
        let x = solve_linear(&m, &b, self.ring.modulus())?;
        Some(self.vec_to_cochain(n - 1, &x))
    }

    /// `sum_t c_t f(t)`.
    pub fn pair(&self, f: &Cochain, c: &Chain) -> Result<RingElem> {
        if f.degree != c.degree {
            return Err(Error::DegreeMismatch { expected: f.degree, got: c.degree });
        }
        let r = &self.ring;
        let mut acc = r.zero();
        for (t, a) in &c.terms {
            acc = r.add(&acc, &r.mul(a, &f.value(t, r)));
        }
        Ok(acc)
    }

    /// `A[X] / (T x + (1 - T) y - x*y)`, presented directly from its relations.
    pub fn h1_presentation(&self) -> Result<Vec<BigInt>> {
        let q = self.x.size();
        let d = self.ring.degree();
        let mut cols = Vec::new();
        for x in 0..q {
            for y in 0..q {
                for k in 0..d {
                    let mut e = self.ring.zero().coeffs().to_vec();
                    e[k] = BigInt::one();
                    let a = self.ring.from_poly(&e);
                    let parts = [(x, self.ring.t_mul(&a)), (y, self.ring.sub(&a, &self.ring.t_mul(&a))), (self.x.op(x, y), self.ring.neg(&a))];
                    let mut col_k = vec![BigInt::zero(); q * d];
                    for (slot, v) in parts {
                        for (p, c) in v.coeffs().iter().enumerate() {
                            col_k[slot * d + p] += c;
                        }
                    }
                    cols.push(col_k);
                }
            }
        }
        let mut rel = IntMatrix::from_columns(q * d, &cols);
        rel = rel.hcat(&self.relations(1));
        let seg = Segment {
            d_in: rel,
            d_out: IntMatrix::zeros(0, q * d),
            relations: IntMatrix::zeros(q * d, 0),
            out_relations: IntMatrix::zeros(0, 0),
            t_mat: IntMatrix::identity(q * d),
        };
        Ok(homology_segment(&seg)?.invariant_factors)
    }

    /// Homology by enumerating every chain; an oracle for small finite complexes.
    pub fn brute_force_homology(&self, n: usize, limit: usize) -> Result<ModuleInfo> {
        let m = self.ring.modulus();
        if m == 0 {
            return Err(Error::InfiniteRing);
        }
        let m = m as usize;
        let width = self.basis(n).len() * self.ring.degree();
        let size = m.checked_pow(width as u32).unwrap_or(usize::MAX);
        if size > limit {
            return Err(Error::ResourceGuard { size, limit });
        }
        let d_out = self.boundary_matrix(n)?;
        let d_in = self.boundary_matrix(n + 1)?;
        let to_small = |v: &[BigInt]| -> Vec<u32> {
            v.iter().map(|x| x.mod_floor(&BigInt::from(m)).to_u32().unwrap()).collect()
        };

        let mut cycles = Vec::new();
        for code in 0..size {
            let mut v = vec![0u32; width];
            let mut c = code;
            for slot in v.iter_mut() {
                *slot = (c % m) as u32;
                c /= m;
            }
            let big: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
            let img = d_out.mul_vec(&big);
            if img.iter().all(|x| x.is_multiple_of(&BigInt::from(m))) {
                cycles.push(v);
            }
        }

        let mut bounds: HashSet<Vec<u32>> = HashSet::new();
        bounds.insert(vec![0; width]);
        for j in 0..d_in.cols() {
            let g = to_small(&d_in.column(j));
            let add = |a: &[u32], b: &[u32]| -> Vec<u32> { a.iter().zip(b).map(|(x, y)| (x + y) % m as u32).collect() };
            let snapshot: Vec<Vec<u32>> = bounds.iter().cloned().collect();
            let mut multiple = g.clone();
            while !bounds.contains(&multiple) {
                for s in &snapshot {
                    bounds.insert(add(s, &multiple));
                }
                multiple = add(&multiple, &g);
            }
        }

        let order = cycles.len() / bounds.len();
        let scaled_in_bounds = |k: usize| {
            cycles
                .iter()
                .filter(|z| {
                    let s: Vec<u32> = z.iter().map(|&x| ((x as usize * k) % m) as u32).collect();
                    bounds.contains(&s)
                })
                .count()
                / bounds.len()
        };
        let mut per_prime: Vec<(usize, Vec<u32>)> = Vec::new();
        let mut rest = order;
        let mut p = 2;
        while rest > 1 {
            if rest.is_multiple_of(p) {
                while rest.is_multiple_of(p) {
                    rest /= p;
                }
                let mut parts_at_least = Vec::new();
                let mut prev = 1usize;
                let mut pk = 1usize;
                loop {
                    pk *= p;
                    let now = scaled_in_bounds(pk);
                    if now == prev {
                        break;
                    }
                    let mut c = 0;
                    let mut ratio = now / prev;
                    while ratio > 1 {
                        ratio /= p;
                        c += 1;
                    }
                    parts_at_least.push(c);
                    prev = now;
                }
                let count = parts_at_least.first().copied().unwrap_or(0) as usize;
                let mut exps = vec![0u32; count];
                for (i, e) in exps.iter_mut().enumerate() {
                    *e = parts_at_least.iter().filter(|&&c| c as usize > i).count() as u32;
                }
                per_prime.push((p, exps));
            }
            p += 1;
        }
        let len = per_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
        let mut factors: Vec<BigInt> = (0..len)
            .map(|i| {
                per_prime
                    .iter()
                    .map(|(p, e)| BigInt::from(p.pow(e.get(i).copied().unwrap_or(0))))
                    .product()
            })
            .collect();
        factors.sort();
        Ok(ModuleInfo { invariant_factors: factors, generators: Vec::new(), t_action: Vec::new() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn r(n: u64) -> AlexanderRing {
        AlexanderRing::new(n, &[1, 1]).unwrap()
    }

    #[test]
    fn dihedral_boundaries() {
        let c = Complex::new(FiniteQuandle::dihedral(3), r(3), Variant::Tq);
        let a = Chain::from_ints(2, c.ring(), &[(&[0, 1], 1)]);
        let expect = Chain::from_ints(1, c.ring(), &[(&[0], -1), (&[1], -1), (&[2], -1)]);
        assert_eq!(c.boundary(&a).unwrap(), expect);

        let c5 = Complex::new(FiniteQuandle::dihedral(3), r(5), Variant::Tq);
        let a = Chain::from_ints(2, c5.ring(), &[(&[0, 1], 1)]);
        let expect = Chain::from_ints(1, c5.ring(), &[(&[1], 2), (&[0], -1), (&[2], -1)]);
        assert_eq!(c5.boundary(&a).unwrap(), expect);

        let a = Chain::from_ints(1, c5.ring(), &[(&[2], 1)]);
        assert!(c5.boundary(&a).unwrap().is_zero());
    }

    #[test]
    fn foreign_tuple_rejected() {
        let c = Complex::new(FiniteQuandle::dihedral(3), r(3), Variant::Tq);
        let a = Chain::from_ints(2, c.ring(), &[(&[1, 1], 1)]);
        assert!(matches!(c.boundary(&a), Err(Error::Foreign(_))));
    }

    #[test]
    fn h2_examples() {
        let c = Complex::new(FiniteQuandle::dihedral(3), r(3), Variant::Tq);
        let h = c.homology(2).unwrap();
        assert_eq!(h.invariant_factors, big(&[3, 3]));
        assert_eq!(h.t_action, vec![big(&[2, 0]), big(&[0, 2])]);
        for n in [5, 7] {
            let c = Complex::new(FiniteQuandle::dihedral(3), r(n), Variant::Tq);
            assert!(c.homology(2).unwrap().is_trivial());
        }
    }

    #[test]
    fn h1_examples() {
        let c = Complex::new(FiniteQuandle::dihedral(3), r(2), Variant::Tq);
        assert_eq!(c.homology(1).unwrap().invariant_factors, big(&[2]));
        let c = Complex::new(FiniteQuandle::dihedral(3), r(3), Variant::Tq);
        assert_eq!(c.homology(1).unwrap().invariant_factors, big(&[3, 3]));
        assert_eq!(c.h1_presentation().unwrap(), big(&[3, 3]));
    }

    #[test]
    fn trivial_quandle_invertible_t_minus_one() {
        let a = AlexanderRing::new(3, &[-2, 1]).unwrap();
        let c = Complex::new(FiniteQuandle::trivial(2), a, Variant::Tq);
        assert!(c.homology(2).unwrap().is_trivial());
    }

    #[test]
    fn brute_force_examples() {
        let c = Complex::new(FiniteQuandle::trivial(2), r(2), Variant::Tq);
        assert_eq!(c.brute_force_homology(2, 729).unwrap().invariant_factors, big(&[2, 2]));
        let c = Complex::new(FiniteQuandle::dihedral(3), r(3), Variant::Tq);
        assert_eq!(c.brute_force_homology(2, 729).unwrap().invariant_factors, big(&[3, 3]));
        let c = Complex::new(FiniteQuandle::trivial(1), r(2), Variant::Tq);
        assert_eq!(c.brute_force_homology(1, 729).unwrap().invariant_factors, big(&[2]));
    }

    #[test]
    fn delta_of_chi_zero() {
        let c = Complex::new(FiniteQuandle::dihedral(3), r(3), Variant::Tq);
        let chi0 = Cochain::characteristic(&[0], c.ring());
        let mut expect = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    expect.push((vec![i, j], c.ring().from_int(-1)));
                }
            }
        }
        assert_eq!(c.delta(&chi0), Cochain::from_values(2, c.ring(), expect));
        assert!(c.delta(&Cochain::zero(2)).is_zero());
    }

    #[test]
    fn homomorphism_is_one_cocycle() {
        let c = Complex::new(FiniteQuandle::dihedral(3), r(3), Variant::Tq);
        let eta = Cochain::from_chi(1, c.ring(), &[(&[1], 1), (&[2], 2)]);
        assert_eq!(c.is_cocycle(&eta), Ok(()));
        let not = Cochain::from_chi(1, c.ring(), &[(&[1], 1)]);
        assert!(c.is_cocycle(&not).is_err());
    }

    #[test]
    fn coboundary_over_r5() {
        let c = Complex::new(FiniteQuandle::dihedral(3), r(5), Variant::Tq);
        let phi = Cochain::from_chi(2, c.ring(), &[(&[0, 2], 1), (&[1, 2], 1), (&[1, 0], -1), (&[2, 0], -1)]);
        assert_eq!(c.is_cocycle(&phi), Ok(()));
        let eta = c.is_coboundary(&phi).unwrap();
        assert_eq!(c.delta(&eta), phi);
    }

    #[test]
    fn text_formats() {
        let ring = r(3);
        let f = Cochain::parse("0,2 -> 1\n1,0 -> 2 # comment\n\n", &ring).unwrap();
        assert_eq!(f, Cochain::from_chi(2, &ring, &[(&[0, 2], 1), (&[1, 0], 2)]));
        assert_eq!(Cochain::parse(&f.to_text(), &ring).unwrap(), f);
        assert!(Cochain::parse("0,1 -> 1\n0 -> 1", &ring).is_err());
        let c = Chain::parse("(0,1,0) -> 1\n(0,2,0) -> -1", &ring).unwrap();
        assert_eq!(c.degree(), 3);
    }

    #[test]
    fn pair_degree_mismatch() {
        let c = Complex::new(FiniteQuandle::dihedral(3), r(3), Variant::Tq);
        let f = Cochain::zero(2);
        assert!(matches!(c.pair(&f, &Chain::zero(3)), Err(Error::DegreeMismatch { .. })));
        assert!(c.pair(&f, &Chain::zero(2)).unwrap().is_zero());
    }
}
