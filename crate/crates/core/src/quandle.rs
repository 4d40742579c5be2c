//! Finite quandles given by operation tables.

use std::fmt;
use std::str::FromStr;

use crate::chain::{Complex, Variant};
use crate::coeff::AlexanderRing;
use crate::error::{parse_err, Error, Result};

/// `table[a][b] = a * b` on the labels `0..q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteQuandle {
    table: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

impl FiniteQuandle {
    /// Validates axioms I-III, reporting the first violation found.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let q = table.len();
        if q == 0 {
            return Err(Error::Axiom("empty table".into()));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != q {
                return Err(Error::Axiom(format!("row {a} has length {}, expected {q}", row.len())));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= q) {
                return Err(Error::Axiom(format!("entry {x} in row {a} out of range")));
            }
        }
        for (a, row) in table.iter().enumerate() {
            if row[a] != a {
                return Err(Error::Axiom(format!("axiom I fails at {a}")));
            }
        }
        for b in 0..q {
            let mut seen = vec![false; q];
            for row in &table {
                if std::mem::replace(&mut seen[row[b]], true) {
                    return Err(Error::Axiom(format!("axiom II fails at column {b}")));
                }
            }
        }
        for a in 0..q {
            for b in 0..q {
                for c in 0..q {
                    let lhs = table[table[a][b]][c];
                    let rhs = table[table[a][c]][table[b][c]];
                    if lhs != rhs {
                        return Err(Error::Axiom(format!("axiom III fails at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(FiniteQuandle { table, labels: None })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.size(), "one label per element");
        self.labels = Some(labels);
        self
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn trivial(n: usize) -> Self {
        assert!(n >= 1, "trivial quandle needs n >= 1");
        let table = (0..n).map(|a| vec![a; n]).collect();
        FiniteQuandle { table, labels: None }
    }

    /// `R_n`: `i * j = 2j - i mod n`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1, "dihedral quandle needs n >= 1");
        let table = (0..n).map(|i| (0..n).map(|j| (2 * j + n - i) % n).collect()).collect();
        FiniteQuandle { table, labels: None }
    }

    /// The Alexander quandle on a finite ring, labeled in enumeration order.
    pub fn alexander(ring: &AlexanderRing) -> Result<Self> {
        let elems = ring.enumerate()?;
        let mut table = Vec::with_capacity(elems.len());
        for a in &elems {
            let row = elems.iter().map(|b| ring.index_of(&ring.quandle_op(a, b))).collect::<Result<Vec<_>>>()?;
            table.push(row);
        }
        let labels = elems.iter().map(|e| e.to_string()).collect();
        Ok(FiniteQuandle { table, labels: Some(labels) })
    }

    /// `AE(X, A, phi)` on `A x X`, with `(a, x)` stored at `a |X| + x`.
    pub fn extension(x: &FiniteQuandle, ring: &AlexanderRing, phi: &crate::chain::Cochain) -> Result<Self> {
        let cx = Complex::new(x.clone(), ring.clone(), Variant::Tq);
        if phi.degree() != 2 {
            return Err(Error::DegreeMismatch { expected: 2, got: phi.degree() });
        }
        if let Err(w) = cx.is_cocycle(phi) {
            return Err(Error::NotCocycle(w));
        }
        let elems = ring.enumerate()?;
        let q = x.size();
        let size = elems.len() * q;
        let mut table = vec![vec![0; size]; size];
        for (ia, a1) in elems.iter().enumerate() {
            for x1 in 0..q {
                for (ib, a2) in elems.iter().enumerate() {
                    for x2 in 0..q {
                        let v = ring.add(&ring.quandle_op(a1, a2), &phi.value(&[x1, x2], ring));
                        let a = ring.index_of(&v)?;
                        table[ia * q + x1][ib * q + x2] = a * q + x.op(x1, x2);
                    }
                }
            }
        }
        FiniteQuandle::from_table(table)
    }

    /// Componentwise operation on `X x Y`, `(x, y)` stored at `x |Y| + y`.
    pub fn product(x: &FiniteQuandle, y: &FiniteQuandle) -> Self {
        let (p, q) = (x.size(), y.size());
        let mut table = vec![vec![0; p * q]; p * q];
        for a in 0..p {
            for b in 0..q {
                for c in 0..p {
                    for d in 0..q {
                        table[a * q + b][c * q + d] = x.op(a, c) * q + y.op(b, d);
                    }
                }
            }
        }
        FiniteQuandle { table, labels: None }
    }

    pub fn size(&self) -> usize {
        self.table.len()
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    /// The unique `c` with `c * b = a`.
    pub fn op_inv(&self, a: usize, b: usize) -> usize {
        (0..self.size()).find(|&c| self.table[c][b] == a).expect("columns are bijections")
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn is_trivial(&self) -> bool {
        self.table.iter().enumerate().all(|(a, row)| row.iter().all(|&x| x == a))
    }

    /// Text form: the size, then one row per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.size());
        for row in &self.table {
            let r: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            s.push_str(&r.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn parse_table(text: &str) -> Result<Self> {
        let mut nums = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| parse_err("quandle table", format!("bad entry `{t}`"))));
        let q = nums.next().ok_or_else(|| parse_err("quandle table", "missing size"))??;
        let mut table = vec![vec![0; q]; q];
        for row in table.iter_mut() {
            for entry in row.iter_mut() {
                *entry = nums.next().ok_or_else(|| parse_err("quandle table", "too few entries"))??;
            }
        }
        if nums.next().is_some() {
            return Err(parse_err("quandle table", "too many entries"));
        }
        FiniteQuandle::from_table(table)
    }
}

impl fmt::Display for FiniteQuandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for FiniteQuandle {
    type Err = Error;

    /// `T(n)`, `R(n)`, `A(n;h)` such as `A(2;T^2+T+1)`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = |prefix: char| {
            t.strip_prefix(prefix)
                .or_else(|| t.strip_prefix(prefix.to_ascii_lowercase()))
                .and_then(|r| r.strip_prefix('('))
                .and_then(|r| r.strip_suffix(')'))
        };
        let count = |body: &str| {
            body.parse::<usize>()
                .ok()
                .filter(|&n| n >= 1)
                .ok_or_else(|| parse_err("quandle name", format!("bad size in `{s}`")))
        };
        if let Some(body) = inner('T') {
            return Ok(FiniteQuandle::trivial(count(body)?));
        }
        if let Some(body) = inner('R') {
            return Ok(FiniteQuandle::dihedral(count(body)?));
        }
        if let Some(body) = inner('A') {
            let (n, h) = body
                .split_once(';')
                .ok_or_else(|| parse_err("quandle name", format!("`{s}`: expected A(n;h)")))?;
            let ring: AlexanderRing = format!("Z{n}[T]/({h})").parse()?;
            return FiniteQuandle::alexander(&ring);
        }
        Err(parse_err("quandle name", format!("unknown quandle `{s}`")))
    }
}

/// A map of labels between two quandles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuandleMap {
    pub values: Vec<usize>,
}

impl QuandleMap {
    pub fn new(values: Vec<usize>) -> Self {
        QuandleMap { values }
    }

    pub fn identity(n: usize) -> Self {
        QuandleMap { values: (0..n).collect() }
    }

    /// `Err((a, b))` names a pair with `f(a * b) != f(a) * f(b)`.
    pub fn is_homomorphism(&self, dom: &FiniteQuandle, cod: &FiniteQuandle) -> std::result::Result<(), (usize, usize)> {
        assert_eq!(self.values.len(), dom.size(), "map must cover the domain");
        let f = &self.values;
        for a in 0..dom.size() {
            for b in 0..dom.size() {
                if f[dom.op(a, b)] != cod.op(f[a], f[b]) {
                    return Err((a, b));
                }
            }
        }
        Ok(())
    }
}

/// First isomorphism in lexicographic order of images, by backtracking.
/// Exponential in the worst case; intended for quandles of at most a few dozen elements.
pub fn find_isomorphism(x: &FiniteQuandle, y: &FiniteQuandle) -> Option<QuandleMap> {
    let q = x.size();
    if q != y.size() {
        return None;
    }
    if fixed_profile(x) != fixed_profile(y) {
        return None;
    }
    let mut f = vec![usize::MAX; q];
    let mut used = vec![false; q];
    if search(x, y, &mut f, &mut used) {
        Some(QuandleMap { values: f })
    } else {
        None
    }
}

/// Sorted counts of elements fixed by each right multiplication; an isomorphism invariant.
fn fixed_profile(x: &FiniteQuandle) -> Vec<usize> {
    let mut v: Vec<usize> = (0..x.size()).map(|b| (0..x.size()).filter(|&a| x.op(a, b) == a).count()).collect();
    v.sort_unstable();
    v
}

fn search(x: &FiniteQuandle, y: &FiniteQuandle, f: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
    let Some(next) = f.iter().position(|&v| v == usize::MAX) else {
        return true;
    };
    for img in 0..y.size() {
        if used[img] {
            continue;
        }
        let saved_f = f.clone();
        let saved_used = used.clone();
        f[next] = img;
        used[img] = true;
        if close(x, y, f, used) && search(x, y, f, used) {
            return true;
        }
        *f = saved_f;
        *used = saved_used;
    }
    false
}

/// Forces `f(a * b) = f(a) * f(b)` over assigned pairs until stable; false on conflict.
fn close(x: &FiniteQuandle, y: &FiniteQuandle, f: &mut [usize], used: &mut [bool]) -> bool {
    let q = x.size();
    loop {
        let mut changed = false;
        for a in 0..q {
            if f[a] == usize::MAX {
                continue;
            }
            for b in 0..q {
                if f[b] == usize::MAX {
                    continue;
                }
                let c = x.op(a, b);
                let v = y.op(f[a], f[b]);
                if f[c] == usize::MAX {
                    if used[v] {
                        return false;
                    }
                    f[c] = v;
                    used[v] = true;
                    changed = true;
                } else if f[c] != v {
                    return false;
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_errors() {
        assert!(FiniteQuandle::from_table(vec![vec![0]]).is_ok());
        let e = FiniteQuandle::from_table(vec![vec![1, 0], vec![1, 1]]).unwrap_err();
        assert_eq!(e, Error::Axiom("axiom I fails at 0".into()));
        let e = FiniteQuandle::from_table(vec![vec![0, 0, 0], vec![0, 1, 1], vec![2, 2, 2]]).unwrap_err();
        assert_eq!(e, Error::Axiom("axiom II fails at column 0".into()));
        let bad = vec![vec![0, 2, 0], vec![2, 1, 1], vec![1, 0, 2]];
        assert!(matches!(FiniteQuandle::from_table(bad), Err(Error::Axiom(m)) if m.starts_with("axiom III")));
    }

    #[test]
    fn standard_quandles() {
        let r3 = FiniteQuandle::dihedral(3);
        assert_eq!(FiniteQuandle::from_table(r3.table().to_vec()).unwrap(), r3);
        assert_eq!(r3.op(1, 0), 2);
        let t2: FiniteQuandle = "T(2)".parse().unwrap();
        assert!(t2.is_trivial());
        let f4: FiniteQuandle = "A(2;T^2+T+1)".parse().unwrap();
        assert_eq!(f4.size(), 4);
        assert!(FiniteQuandle::from_table(f4.table().to_vec()).is_ok());
        assert_eq!(FiniteQuandle::dihedral(2), FiniteQuandle::trivial(2));
    }

    #[test]
    fn homomorphisms() {
        let r3 = FiniteQuandle::dihedral(3);
        assert!(QuandleMap::identity(3).is_homomorphism(&r3, &r3).is_ok());
        assert!(QuandleMap::new(vec![1, 1, 1]).is_homomorphism(&r3, &r3).is_ok());
        assert!(QuandleMap::new(vec![1, 0, 2]).is_homomorphism(&r3, &r3).is_ok());
        let t3 = FiniteQuandle::trivial(3);
        assert_eq!(QuandleMap::identity(3).is_homomorphism(&t3, &r3), Err((0, 1)));
    }

    #[test]
    fn products_and_isomorphisms() {
        let r6 = FiniteQuandle::dihedral(6);
        let p = FiniteQuandle::product(&FiniteQuandle::dihedral(2), &FiniteQuandle::dihedral(3));
        let f = find_isomorphism(&r6, &p).unwrap();
        assert!(f.is_homomorphism(&r6, &p).is_ok());
        let t4 = FiniteQuandle::product(&FiniteQuandle::trivial(2), &FiniteQuandle::trivial(2));
        assert_eq!(t4, FiniteQuandle::trivial(4));
        assert!(find_isomorphism(&FiniteQuandle::trivial(2), &FiniteQuandle::dihedral(2)).is_some());
        assert!(find_isomorphism(&FiniteQuandle::trivial(3), &FiniteQuandle::dihedral(3)).is_none());
        assert!(find_isomorphism(&FiniteQuandle::dihedral(4), &FiniteQuandle::trivial(3)).is_none());
    }

    #[test]
    fn text_round_trip() {
        let r3 = FiniteQuandle::dihedral(3);
        assert_eq!(FiniteQuandle::parse_table(&r3.to_text()).unwrap(), r3);
        assert!(FiniteQuandle::parse_table("2\n0 0\n1").is_err());
    }
}
