//! Oriented link diagrams in PD form, their faces and Alexander numberings,
//! quandle colorings, and the twisted cocycle state sum. Also triple-point
//! presentations of knotted surfaces.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::chain::{Cochain, Complex, Variant};
use crate::coeff::{AlexanderRing, GroupRingElem, RingElem};
use crate::error::{Error, Result};
use crate::exactlin::{solve_linear, IntMatrix};
use crate::quandle::FiniteQuandle;

fn diag_err(msg: impl Into<String>) -> Error {
    Error::Diagram(msg.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    fn letter(self) -> char {
        match self {
            Side::Left => 'L',
            Side::Right => 'R',
        }
    }
}

/// Slots run counterclockwise from the incoming under-edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub slots: [usize; 4],
    /// `Xp`: over strand enters at slot 3; `Xn`: at slot 1.
    pub xp: bool,
}

impl Crossing {
    fn over_in_slot(&self) -> usize {
        if self.xp {
            3
        } else {
            1
        }
    }

    fn over_out_slot(&self) -> usize {
        (self.over_in_slot() + 2) % 4
    }

    fn is_out(&self, slot: usize) -> bool {
        slot == 2 || slot == self.over_out_slot()
    }

    pub fn under_in(&self) -> usize {
        self.slots[0]
    }

    pub fn under_out(&self) -> usize {
        self.slots[2]
    }

    pub fn over_in(&self) -> usize {
        self.slots[self.over_in_slot()]
    }

    pub fn over_out(&self) -> usize {
        self.slots[self.over_out_slot()]
    }

    /// Sign from the plane's counterclockwise orientation: `+1` iff `over x under > 0`.
    pub fn sign(&self) -> i8 {
        // slot k points along angle 270 + 90k degrees
        let dir = |slot: usize| -> (i64, i64) { [(0, -1), (1, 0), (0, 1), (-1, 0)][slot] };
        let over = dir(self.over_out_slot());
        let under = dir(2);
        if over.0 * under.1 - over.1 * under.0 > 0 {
            1
        } else {
            -1
        }
    }

    /// Corner of the region both normals point away from.
    fn source_corner(&self) -> usize {
        if self.sign() > 0 {
            0
        } else {
            1
        }
    }

    /// Under arc the over normal points away from, and the one it points to.
    fn r1_r2(&self) -> (usize, usize) {
        if self.sign() > 0 {
            (self.under_in(), self.under_out())
        } else {
            (self.under_out(), self.under_in())
        }
    }
}

/// Named reference to a face: a label or one side of an edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FaceRef {
    Label(String),
    EdgeSide(String, Side),
}

impl FaceRef {
    pub fn parse(tok: &str) -> FaceRef {
        let tok = tok.trim();
        if let Some(stripped) = tok.strip_suffix('L').or_else(|| tok.strip_suffix('R')) {
            if !stripped.is_empty() && stripped.chars().all(|c| c.is_ascii_digit()) {
                let side = if tok.ends_with('L') { Side::Left } else { Side::Right };
                return FaceRef::EdgeSide(stripped.to_string(), side);
            }
        }
        FaceRef::Label(tok.to_string())
    }
}

#[derive(Clone, Debug)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    edge_labels: Vec<String>,
    /// `(crossing, slot)` where each edge leaves and arrives.
    tail: Vec<(usize, usize)>,
    head: Vec<(usize, usize)>,
    loops: usize,
    modulus: u64,
    base: Option<FaceRef>,
    /// Face boundaries as `(edge, side)` in tracing order.
    faces: Vec<Vec<(usize, Side)>>,
    corner_face: Vec<[usize; 4]>,
    face_labels: Vec<Option<String>>,
    numbering_override: Option<Vec<i64>>,
}

/// Region numbers and the numbers of each crossing's source region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Numbering {
    pub faces: Vec<i64>,
    pub crossings: Vec<i64>,
}

fn parse_crossing(item: &str, edges: &mut Vec<String>, index: &mut HashMap<String, usize>) -> Result<Crossing> {
    let xp = match &item[..2] {
        "Xp" => true,
        "Xn" => false,
        _ => return Err(diag_err(format!("ambiguous orientation: `{item}` needs an Xp or Xn tag"))),
    };
    let inner = item[2..]
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| diag_err(format!("malformed crossing `{item}`")))?;
    let labels: Vec<&str> = inner.split(',').map(str::trim).collect();
    if labels.len() != 4 || labels.iter().any(|l| l.is_empty()) {
        return Err(diag_err(format!("crossing `{item}` must list exactly 4 edges")));
    }
    let mut slots = [0; 4];
    for (k, l) in labels.iter().enumerate() {
        slots[k] = *index.entry(l.to_string()).or_insert_with(|| {
            edges.push(l.to_string());
            edges.len() - 1
        });
    }
    Ok(Crossing { slots, xp })
}

/// Splits a line into `X?[...]` items.
fn crossing_items(line: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut rest = line.trim();
    if let Some(inner) = rest.strip_prefix("PD[").and_then(|s| s.strip_suffix(']')) {
        rest = inner;
    }
    while !rest.is_empty() {
        rest = rest.trim_start_matches(|c: char| c == ',' || c.is_whitespace());
        if rest.is_empty() {
            break;
        }
        let close = rest.find(']').ok_or_else(|| diag_err(format!("unterminated crossing in `{line}`")))?;
        out.push(rest[..=close].replace(' ', ""));
        rest = &rest[close + 1..];
    }
    Ok(out)
}

pub fn parse_pd(text: &str) -> Result<Diagram> {
    let mut crossings = Vec::new();
    let mut edges = Vec::new();
    let mut index = HashMap::new();
    let mut loops = 0;
    let mut modulus = 0;
    let mut base = None;
    let mut face_directives: Vec<(String, Vec<FaceRef>)> = Vec::new();
    let mut numbering_override = None;

    for raw in text.lines() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let (word, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match word.trim_end_matches(':') {
            "outer" | "base" => base = Some(FaceRef::parse(rest)),
            "mod" => {
                modulus = rest.parse().map_err(|_| diag_err(format!("bad modulus `{rest}`")))?;
            }
            "loop" => {
                loops += if rest.is_empty() {
                    1
                } else {
                    rest.parse::<usize>().map_err(|_| diag_err(format!("bad loop count `{rest}`")))?
                };
            }
            "numbering" => {
                let vals = rest
                    .split_whitespace()
                    .map(|t| t.parse::<i64>().map_err(|_| diag_err(format!("bad numbering entry `{t}`"))))
                    .collect::<Result<Vec<_>>>()?;
                numbering_override = Some(vals);
            }
            "face" => {
                let (name, sides) = rest
                    .split_once(':')
                    .ok_or_else(|| diag_err(format!("expected `face <id>: <edge sides>` in `{line}`")))?;
                let sides = sides.split_whitespace().map(FaceRef::parse).collect();
                face_directives.push((name.trim().to_string(), sides));
            }
            _ => {
                for item in crossing_items(line)? {
                    crossings.push(parse_crossing(&item, &mut edges, &mut index)?);
                }
            }
        }
    }
    Diagram::build(crossings, edges, loops, modulus, base, face_directives, numbering_override)
}

impl Diagram {
    fn build(
        crossings: Vec<Crossing>,
        edge_labels: Vec<String>,
        loops: usize,
        modulus: u64,
        base: Option<FaceRef>,
        face_directives: Vec<(String, Vec<FaceRef>)>,
        numbering_override: Option<Vec<i64>>,
    ) -> Result<Diagram> {
        let e = edge_labels.len();
        let mut tail = vec![None; e];
        let mut head = vec![None; e];
        for (v, c) in crossings.iter().enumerate() {
            for slot in 0..4 {
                let end = if c.is_out(slot) { &mut tail } else { &mut head };
                let edge = c.slots[slot];
                if end[edge].is_some() {
                    return Err(diag_err(format!(
                        "ambiguous orientation: edge {} {} twice",
                        edge_labels[edge],
                        if c.is_out(slot) { "leaves" } else { "arrives" }
                    )));
                }
                end[edge] = Some((v, slot));
            }
        }
        let mut t = Vec::with_capacity(e);
        let mut h = Vec::with_capacity(e);
        for i in 0..e {
            match (tail[i], head[i]) {
                (Some(a), Some(b)) => {
                    t.push(a);
                    h.push(b);
                }
                _ => return Err(diag_err(format!("dangling semiarc {}", edge_labels[i]))),
            }
        }
        if let Some(n) = &numbering_override {
            if n.len() != crossings.len() {
                return Err(diag_err(format!("numbering lists {} values for {} crossings", n.len(), crossings.len())));
            }
        }
        let mut d = Diagram {
            crossings,
            edge_labels,
            tail: t,
            head: h,
            loops,
            modulus,
            base,
            faces: Vec::new(),
            corner_face: Vec::new(),
            face_labels: Vec::new(),
            numbering_override,
        };
        d.trace_faces();
        d.apply_face_directives(face_directives)?;
        if d.modulus == 0 && !d.crossings.is_empty() {
            let chi = d.crossings.len() as i64 - d.edge_count() as i64 + d.faces.len() as i64;
            if chi != 2 || !d.is_connected() {
                return Err(diag_err(format!(
                    "non-planar face count: V - E + F = {chi} for a connected planar diagram needs 2"
                )));
            }
        }
        if let Some(b) = d.base.clone() {
            d.resolve(&b)?;
        }
        Ok(d)
    }

    fn other_end(&self, v: usize, slot: usize) -> (usize, usize) {
        let e = self.crossings[v].slots[slot];
        if self.tail[e] == (v, slot) {
            self.head[e]
        } else {
            self.tail[e]
        }
    }

    fn trace_faces(&mut self) {
        let n = self.crossings.len();
        let mut corner_face = vec![[usize::MAX; 4]; n];
        let mut faces = Vec::new();
        for v in 0..n {
            for i in 0..4 {
                if corner_face[v][i] != usize::MAX {
                    continue;
                }
                let id = faces.len();
                let mut boundary = Vec::new();
                let (mut cv, mut ci) = (v, i);
                while corner_face[cv][ci] == usize::MAX {
                    corner_face[cv][ci] = id;
                    let slot = (ci + 1) % 4;
                    let e = self.crossings[cv].slots[slot];
                    let along = self.tail[e] == (cv, slot);
                    boundary.push((e, if along { Side::Right } else { Side::Left }));
                    let (w, j) = self.other_end(cv, slot);
                    cv = w;
                    ci = j;
                }
                faces.push(boundary);
            }
        }
        self.face_labels = vec![None; faces.len()];
        self.faces = faces;
        self.corner_face = corner_face;
    }

    fn is_connected(&self) -> bool {
        let n = self.crossings.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for slot in 0..4 {
                let (w, _) = self.other_end(v, slot);
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    fn edge_index(&self, label: &str) -> Result<usize> {
        self.edge_labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| diag_err(format!("unknown edge {label}")))
    }

    pub fn face_of(&self, edge: usize, side: Side) -> usize {
        let (v, k) = self.tail[edge];
        match side {
            Side::Left => self.corner_face[v][k],
            Side::Right => self.corner_face[v][(k + 3) % 4],
        }
    }

    fn resolve(&self, r: &FaceRef) -> Result<usize> {
        match r {
            FaceRef::EdgeSide(e, s) => Ok(self.face_of(self.edge_index(e)?, *s)),
            FaceRef::Label(l) => {
                if let Some(i) = self.face_labels.iter().position(|x| x.as_deref() == Some(l.as_str())) {
                    return Ok(i);
                }
                if let Some(i) = l.strip_prefix('F').and_then(|s| s.parse::<usize>().ok()) {
                    if i < self.faces.len() {
                        return Ok(i);
                    }
                }
                Err(diag_err(format!("unknown face {l}")))
            }
        }
    }

    fn apply_face_directives(&mut self, dirs: Vec<(String, Vec<FaceRef>)>) -> Result<()> {
        for (name, sides) in dirs {
            let mut want = Vec::new();
            for s in &sides {
                match s {
                    FaceRef::EdgeSide(e, side) => want.push((self.edge_index(e)?, *side)),
                    FaceRef::Label(l) => return Err(diag_err(format!("face {name}: `{l}` is not an edge side"))),
                }
            }
            want.sort();
            let found = self.faces.iter().position(|f| {
                let mut f = f.clone();
                f.sort();
                f == want
            });
            match found {
                Some(i) => self.face_labels[i] = Some(name),
                None => return Err(diag_err(format!("face {name} does not match any traced face"))),
            }
        }
        Ok(())
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_labels.len()
    }

    pub fn edge_label(&self, e: usize) -> &str {
        &self.edge_labels[e]
    }

    pub fn loops(&self) -> usize {
        self.loops
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Faces of the crossing graph; free loops are not included.
    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn faces(&self) -> &[Vec<(usize, Side)>] {
        &self.faces
    }

    pub fn face_name(&self, f: usize) -> String {
        self.face_labels[f].clone().unwrap_or_else(|| format!("F{f}"))
    }

    /// One line per face: `name: 1L 2R ...`.
    pub fn describe_faces(&self) -> Vec<String> {
        (0..self.faces.len())
            .map(|f| {
                let sides: Vec<String> =
                    self.faces[f].iter().map(|(e, s)| format!("{}{}", self.edge_labels[*e], s.letter())).collect();
                format!("{}: {}", self.face_name(f), sides.join(" "))
            })
            .collect()
    }

    pub fn with_base(&self, base: FaceRef) -> Result<Diagram> {
        self.resolve(&base)?;
        let mut d = self.clone();
        d.base = Some(base);
        Ok(d)
    }

    pub fn base_face(&self) -> Result<usize> {
        match &self.base {
            Some(b) => self.resolve(b),
            None if self.modulus > 0 => Ok(0),
            None => Err(diag_err("planar diagram needs an `outer` face")),
        }
    }

    /// Alexander numbering; `None` when no mod-p numbering exists.
    pub fn numbering(&self) -> Result<Option<Numbering>> {
        if let Some(n) = &self.numbering_override {
            return Ok(Some(Numbering { faces: Vec::new(), crossings: n.clone() }));
        }
        if self.crossings.is_empty() {
            return Ok(Some(Numbering { faces: Vec::new(), crossings: Vec::new() }));
        }
        let base = self.base_face()?;
        let faces = if self.modulus == 0 {
            self.planar_numbering(base)?
        } else {
            match self.modular_numbering(base) {
                Some(f) => f,
                None => return Ok(None),
            }
        };
        let crossings = (0..self.crossings.len())
            .map(|v| faces[self.corner_face[v][self.crossings[v].source_corner()]])
            .collect();
        Ok(Some(Numbering { faces, crossings }))
    }

    fn planar_numbering(&self, base: usize) -> Result<Vec<i64>> {
        let nf = self.faces.len();
        let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); nf];
        for e in 0..self.edge_count() {
            let (l, r) = (self.face_of(e, Side::Left), self.face_of(e, Side::Right));
            adj[r].push((l, 1));
            adj[l].push((r, -1));
        }
        let mut num = vec![None; nf];
        num[base] = Some(0);
        let mut queue = VecDeque::from([base]);
        while let Some(f) = queue.pop_front() {
            let here = num[f].unwrap();
            for &(g, step) in &adj[f] {
                match num[g] {
                    None => {
                        num[g] = Some(here + step);
                        queue.push_back(g);
                    }
                    Some(v) if v != here + step => {
                        return Err(diag_err(format!(
                            "inconsistent numbering between {} and {}",
                            self.face_name(f),
                            self.face_name(g)
                        )))
                    }
                    _ => {}
                }
            }
        }
        num.into_iter()
            .map(|x| x.ok_or_else(|| diag_err("face graph is disconnected")))
            .collect()
    }

    fn modular_numbering(&self, base: usize) -> Option<Vec<i64>> {
        let nf = self.faces.len();
        let ne = self.edge_count();
        let mut m = IntMatrix::zeros(ne + 1, nf);
        let mut b = vec![BigInt::from(0); ne + 1];
        for e in 0..ne {
            let (l, r) = (self.face_of(e, Side::Left), self.face_of(e, Side::Right));
            m[(e, l)] += 1;
            m[(e, r)] -= 1;
            b[e] = BigInt::from(1);
        }
        m[(ne, base)] = BigInt::from(1);
        let x = solve_linear(&m, &b, self.modulus)?;
        Some(x.iter().map(|v| v.to_i64().unwrap()).collect())
    }

    /// All colorings in lexicographic order; free loops take the last positions.
    pub fn colorings(&self, x: &FiniteQuandle) -> Vec<Vec<usize>> {
        let ne = self.edge_count();
        let q = x.size();
        // constraints checked once their largest edge is assigned
        let mut checks: Vec<Vec<usize>> = vec![Vec::new(); ne];
        for (v, c) in self.crossings.iter().enumerate() {
            let (r1, r2) = c.r1_r2();
            let last = *[c.over_in(), c.over_out(), r1, r2].iter().max().unwrap();
            checks[last].push(v);
        }
        let ok = |col: &[usize], v: usize| -> bool {
            let c = &self.crossings[v];
            let (r1, r2) = c.r1_r2();
            col[c.over_in()] == col[c.over_out()] && x.op(col[r1], col[c.over_in()]) == col[r2]
        };
        let mut out = Vec::new();
        let mut col = vec![0usize; ne];
        fn go(
            i: usize,
            ne: usize,
            q: usize,
            col: &mut Vec<usize>,
            checks: &[Vec<usize>],
            ok: &dyn Fn(&[usize], usize) -> bool,
            out: &mut Vec<Vec<usize>>,
        ) {
            if i == ne {
                out.push(col.clone());
                return;
            }
            for a in 0..q {
                col[i] = a;
                if checks[i].iter().all(|&v| ok(col, v)) {
                    go(i + 1, ne, q, col, checks, ok, out);
                }
            }
        }
        go(0, ne, q, &mut col, &checks, &ok, &mut out);
        for _ in 0..self.loops {
            out = out
                .into_iter()
                .flat_map(|c| {
                    (0..q).map(move |a| {
                        let mut c = c.clone();
                        c.push(a);
                        c
                    })
                })
                .collect();
        }
        out
    }

    /// Crossing changed at every vertex.
    pub fn switched(&self) -> Diagram {
        let mut d = self.clone();
        for c in d.crossings.iter_mut() {
            let [a, b, cc, dd] = c.slots;
            if c.xp {
                *c = Crossing { slots: [dd, a, b, cc], xp: false };
            } else {
                *c = Crossing { slots: [b, cc, dd, a], xp: true };
            }
        }
        d.rebuild().expect("switching preserves validity")
    }

    fn rebuild(&self) -> Result<Diagram> {
        let dirs = self
            .face_labels
            .iter()
            .enumerate()
            .filter_map(|(i, l)| {
                l.as_ref().map(|name| {
                    let sides = self.faces[i]
                        .iter()
                        .map(|(e, s)| FaceRef::EdgeSide(self.edge_labels[*e].clone(), *s))
                        .collect();
                    (name.clone(), sides)
                })
            })
            .collect();
        Diagram::build(
            self.crossings.clone(),
            self.edge_labels.clone(),
            self.loops,
            self.modulus,
            self.base.clone(),
            dirs,
            self.numbering_override.clone(),
        )
    }

    /// Copy without base, face names or numbering override, ready for surgery.
    fn detached(&self) -> Diagram {
        let mut d = self.clone();
        d.base = None;
        d.face_labels = vec![None; d.faces.len()];
        d.numbering_override = None;
        d
    }

    fn fresh_label(&self) -> String {
        let next = self.edge_labels.iter().filter_map(|l| l.parse::<u64>().ok()).max().unwrap_or(0) + 1;
        let mut n = next;
        while self.edge_labels.iter().any(|l| *l == n.to_string()) {
            n += 1;
        }
        n.to_string()
    }

    /// Splits `edge` into a part ending at its head and returns the new label;
    /// the original label keeps the tail end.
    fn split_edge(&mut self, edge: usize) -> usize {
        let label = self.fresh_label();
        self.edge_labels.push(label);
        let new = self.edge_labels.len() - 1;
        let (v, slot) = self.head[edge];
        self.crossings[v].slots[slot] = new;
        new
    }

    /// Reidemeister I: a kink on `edge` whose loop bounds a monogon.
    pub fn with_kink(&self, edge: &str, positive: bool) -> Result<Diagram> {
        let e = self.edge_index(edge)?;
        let mut d = self.detached();
        let after = d.split_edge(e);
        let l = d.fresh_label();
        d.edge_labels.push(l);
        let lp = d.edge_labels.len() - 1;
        d.crossings.push(if positive {
            Crossing { slots: [e, after, lp, lp], xp: true }
        } else {
            Crossing { slots: [e, lp, lp, after], xp: false }
        });
        let mut out = d.rebuild()?;
        out.base = self.base.clone();
        out.rebuild()
    }

    /// Reidemeister II: pushes `e` over `f` across the face right of `e` and left of `f`.
    pub fn with_push_over(&self, e: &str, f: &str) -> Result<Diagram> {
        let (ei, fi) = (self.edge_index(e)?, self.edge_index(f)?);
        if ei == fi || self.face_of(ei, Side::Right) != self.face_of(fi, Side::Left) {
            return Err(diag_err(format!("edges {e} and {f} do not share a face right of {e} and left of {f}")));
        }
        let mut d = self.detached();
        let e_b = d.split_edge(ei);
        let f_b = d.split_edge(fi);
        let e_m = {
            d.edge_labels.push(d.fresh_label());
            d.edge_labels.len() - 1
        };
        let f_m = {
            d.edge_labels.push(d.fresh_label());
            d.edge_labels.len() - 1
        };
        d.crossings.push(Crossing { slots: [fi, e_m, f_m, ei], xp: true });
        d.crossings.push(Crossing { slots: [f_m, e_m, f_b, e_b], xp: false });
        let mut out = d.rebuild()?;
        out.base = self.base.clone();
        out.rebuild()
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.crossings {
            let l: Vec<&str> = c.slots.iter().map(|&e| self.edge_labels[e].as_str()).collect();
            writeln!(f, "{}[{}]", if c.xp { "Xp" } else { "Xn" }, l.join(","))?;
        }
        for _ in 0..self.loops {
            writeln!(f, "loop")?;
        }
        if self.modulus > 0 {
            writeln!(f, "mod {}", self.modulus)?;
        }
        match &self.base {
            Some(FaceRef::Label(l)) => writeln!(f, "outer {l}")?,
            Some(FaceRef::EdgeSide(e, s)) => writeln!(f, "outer {e}{}", s.letter())?,
            None => {}
        }
        Ok(())
    }
}

/// Value of the state sum together with the data it was summed over.
#[derive(Clone, Debug)]
pub struct StateSum {
    pub value: GroupRingElem,
    pub colorings: usize,
    pub per_coloring: Vec<(Vec<usize>, RingElem)>,
}

fn weighted(ring: &AlexanderRing, sign: i64, l: i64, v: &RingElem) -> RingElem {
    let w = ring.t_pow(v, -l);
    if sign > 0 {
        w
    } else {
        ring.neg(&w)
    }
}

fn sum_up(per: &[(Vec<usize>, RingElem)], scale: i64) -> GroupRingElem {
    let mut g = GroupRingElem::new();
    for (_, v) in per {
        g.add_term(v.clone(), scale);
    }
    g
}

fn run_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    if jobs <= 1 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// `sum_C T-weighted phi` over colorings; `jobs > 1` evaluates colorings in parallel.
pub fn state_sum(d: &Diagram, x: &FiniteQuandle, ring: &AlexanderRing, phi: &Cochain, jobs: usize) -> Result<StateSum> {
    if phi.degree() != 2 {
        return Err(Error::DegreeMismatch { expected: 2, got: phi.degree() });
    }
    Complex::new(x.clone(), ring.clone(), Variant::Tq).is_cocycle(phi).map_err(Error::NotCocycle)?;
    let cols = d.colorings(x);
    let Some(num) = d.numbering()? else {
        return Ok(StateSum { value: GroupRingElem::new(), colorings: cols.len(), per_coloring: Vec::new() });
    };
    let ne = d.edge_count();
    let weight = |col: &Vec<usize>| -> RingElem {
        let mut acc = ring.zero();
        for (v, c) in d.crossings.iter().enumerate() {
            let (r1, _) = c.r1_r2();
            let val = phi.value(&[col[r1], col[c.over_in()]], ring);
            acc = ring.add(&acc, &weighted(ring, c.sign() as i64, num.crossings[v], &val));
        }
        acc
    };
    // free loop colors do not enter any weight
    let stride = x.size().pow(d.loops() as u32);
    let base: Vec<Vec<usize>> = cols.iter().step_by(stride.max(1)).map(|c| c[..ne].to_vec()).collect();
    let per: Vec<(Vec<usize>, RingElem)> = run_jobs(jobs, || base.par_iter().map(|c| (c.clone(), weight(c))).collect());
    let mut value = sum_up(&per, stride as i64);
    if d.modulus() > 0 {
        value = value.canonical_under_t(ring);
    }
    Ok(StateSum { value, colorings: cols.len(), per_coloring: per })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriplePoint {
    pub sign: i8,
    pub l: i64,
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

/// Sheets, double-curve relations `c = a * b` and triple points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfacePresentation {
    pub sheets: Vec<String>,
    pub relations: Vec<(usize, usize, usize)>,
    pub triple_points: Vec<TriplePoint>,
}

impl SurfacePresentation {
    pub fn parse(text: &str) -> Result<Self> {
        let mut sheets: Vec<String> = Vec::new();
        let mut rel_text = Vec::new();
        let mut tp_text = Vec::new();
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (key, rest) = line
                .split_once(':')
                .ok_or_else(|| diag_err(format!("expected `key: value` in `{line}`")))?;
            match key.trim() {
                "sheets" => sheets.extend(rest.split_whitespace().map(str::to_string)),
                "rel" => rel_text.push(rest.trim().to_string()),
                "tp" => tp_text.push(rest.trim().to_string()),
                k => return Err(diag_err(format!("unknown key `{k}`"))),
            }
        }
        let var = |name: &str| -> Result<usize> {
            sheets
                .iter()
                .position(|s| s == name)
                .ok_or_else(|| diag_err(format!("undeclared sheet `{name}`")))
        };
        let mut relations = Vec::new();
        for r in rel_text {
            let (c, ab) = r.split_once('=').ok_or_else(|| diag_err(format!("bad relation `{r}`")))?;
            let (a, b) = ab.split_once('*').ok_or_else(|| diag_err(format!("bad relation `{r}`")))?;
            relations.push((var(c.trim())?, var(a.trim())?, var(b.trim())?));
        }
        let mut triple_points = Vec::new();
        for t in tp_text {
            let mut fields = BTreeMap::new();
            for kv in t.split_whitespace() {
                let (k, v) = kv.split_once('=').ok_or_else(|| diag_err(format!("bad field `{kv}`")))?;
                fields.insert(k.to_string(), v.to_string());
            }
            let get = |k: &str| fields.get(k).cloned().ok_or_else(|| diag_err(format!("triple point lacks `{k}`")));
            let sign: i8 = match get("sign")?.as_str() {
                "+1" | "1" | "+" => 1,
                "-1" | "-" => -1,
                s => return Err(diag_err(format!("bad sign `{s}`"))),
            };
            let l = get("L")?.parse().map_err(|_| diag_err("numbering entries must be integers"))?;
            triple_points.push(TriplePoint { sign, l, x: var(&get("x")?)?, y: var(&get("y")?)?, z: var(&get("z")?)? });
        }
        Ok(SurfacePresentation { sheets, relations, triple_points })
    }

    /// Assignments of sheets satisfying every relation, in lexicographic order.
    pub fn colorings(&self, x: &FiniteQuandle) -> Vec<Vec<usize>> {
        let n = self.sheets.len();
        let q = x.size();
        let mut checks: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, &(c, a, b)) in self.relations.iter().enumerate() {
            checks[c.max(a).max(b)].push(i);
        }
        let mut out = Vec::new();
        let mut col = vec![0; n];
        let mut stack = vec![(0usize, 0usize)];
        // iterative depth-first search: (position, next value to try)
        while let Some((i, a)) = stack.pop() {
            if i == n {
                out.push(col.clone());
                continue;
            }
            if a == q {
                continue;
            }
            stack.push((i, a + 1));
            col[i] = a;
            let ok = checks[i].iter().all(|&r| {
                let (c, aa, b) = self.relations[r];
                x.op(col[aa], col[b]) == col[c]
            });
            if ok {
                stack.push((i + 1, 0));
            }
        }
        out
    }
}

/// `sum_C sum_tau eps T^(-L) theta(x, y, z)`, reported up to the `T`-action.
pub fn state_sum_surface(p: &SurfacePresentation, x: &FiniteQuandle, ring: &AlexanderRing, theta: &Cochain) -> Result<StateSum> {
    if theta.degree() != 3 {
        return Err(Error::DegreeMismatch { expected: 3, got: theta.degree() });
    }
    Complex::new(x.clone(), ring.clone(), Variant::Tq).is_cocycle(theta).map_err(Error::NotCocycle)?;
    let cols = p.colorings(x);
    let per: Vec<(Vec<usize>, RingElem)> = cols
        .iter()
        .map(|col| {
            let mut acc = ring.zero();
            for tp in &p.triple_points {
                let v = theta.value(&[col[tp.x], col[tp.y], col[tp.z]], ring);
                acc = ring.add(&acc, &weighted(ring, tp.sign as i64, tp.l, &v));
            }
            (col.clone(), acc)
        })
        .collect();
    let value = sum_up(&per, 1).canonical_under_t(ring);
    Ok(StateSum { value, colorings: cols.len(), per_coloring: per })
}

#[cfg(test)]
mod tests {
    use super::*;

    const HOPF: &str = "Xp[1,3,2,4]\nXp[3,1,4,2]\nouter 2R\n";
    const TREFOIL: &str = "Xp[1,5,2,4]\nXp[3,1,4,6]\nXp[5,3,6,2]\n";

    #[test]
    fn hopf_structure() {
        let d = parse_pd(HOPF).unwrap();
        assert_eq!((d.crossing_count(), d.edge_count(), d.face_count()), (2, 4, 4));
        assert!(d.crossings().iter().all(|c| c.sign() == 1));
        let n = d.numbering().unwrap().unwrap();
        assert_eq!(n.crossings, vec![-1, -1]);
        assert_eq!(d.colorings(&FiniteQuandle::trivial(2)).len(), 4);
    }

    #[test]
    fn kink_faces() {
        let d = parse_pd("Xp[1,1,2,2]\n").unwrap();
        assert_eq!(d.face_count(), 3);
        let d = parse_pd("Xn[1,2,2,1]\n").unwrap();
        assert_eq!(d.face_count(), 3);
    }

    #[test]
    fn trefoil_colorings() {
        let d = parse_pd(TREFOIL).unwrap();
        assert_eq!(d.face_count(), 5);
        assert_eq!(d.colorings(&FiniteQuandle::dihedral(3)).len(), 9);
        assert_eq!(d.colorings(&FiniteQuandle::trivial(4)).len(), 4);
    }

    #[test]
    fn unknot_loop() {
        let d = parse_pd("loop\n").unwrap();
        assert_eq!(d.colorings(&FiniteQuandle::dihedral(5)).len(), 5);
        assert_eq!(d.numbering().unwrap().unwrap().crossings, Vec::<i64>::new());
    }

    #[test]
    fn malformed_inputs() {
        assert!(parse_pd("Xp[1,2,3]\n").is_err());
        assert!(parse_pd("X[1,2,3,4]\n").is_err());
        assert!(parse_pd("Xp[1,2,3,4]\n").is_err());
        assert!(matches!(parse_pd("Xp[1,3,2,4]\nXn[3,1,4,2]\n"), Err(Error::Diagram(_))));
    }

    #[test]
    fn face_directives() {
        let plain = parse_pd(HOPF).unwrap();
        let outer = plain.face_of(plain.edge_index("2").unwrap(), Side::Right);
        let sides: Vec<String> = plain.faces()[outer]
            .iter()
            .map(|(e, s)| format!("{}{}", plain.edge_label(*e), s.letter()))
            .collect();
        let text = format!("Xp[1,3,2,4]\nXp[3,1,4,2]\nface O: {}\nouter O\n", sides.join(" "));
        let named = parse_pd(&text).unwrap();
        assert_eq!(named.numbering().unwrap(), plain.numbering().unwrap());
    }

    #[test]
    fn surface_counts() {
        let p = SurfacePresentation::parse("sheets: a b c\n").unwrap();
        assert_eq!(p.colorings(&FiniteQuandle::trivial(3)).len(), 27);
        let p = SurfacePresentation::parse("sheets: a b c\nrel: c = a * b\n").unwrap();
        assert_eq!(p.colorings(&FiniteQuandle::dihedral(3)).len(), 9);
        let p = SurfacePresentation::parse("sheets: a b c d\nrel: c = a * b\nrel: c = a * d\n").unwrap();
        let brute = (0..81)
            .filter(|i| {
                let (a, b, c, d) = (i % 3, i / 3 % 3, i / 9 % 3, i / 27);
                let x = FiniteQuandle::dihedral(3);
                x.op(a, b) == c && x.op(a, d) == c
            })
            .count();
        assert_eq!(p.colorings(&FiniteQuandle::dihedral(3)).len(), brute);
        assert!(SurfacePresentation::parse("sheets: a\nrel: b = a * a\n").is_err());
    }
}
