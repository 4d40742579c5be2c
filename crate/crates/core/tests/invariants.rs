use proptest::prelude::*;

use twistq_core::chain::{Cochain, Complex, Variant};
use twistq_core::cocycles::{dihedral_integral_cocycle, modular_extension_cocycle, polynomial_extension_cocycle, SesSpec};
use twistq_core::coeff::{AlexanderRing, GroupRingElem};
use twistq_core::knot::{parse_pd, state_sum, Diagram, FaceRef, Side};
use twistq_core::quandle::{FiniteQuandle, QuandleMap};

const HOPF: &str = include_str!("../data/hopf.pd");
const TREFOIL: &str = include_str!("../data/trefoil.pd");
const TORUS: &str = include_str!("../data/torus.pd");

struct Case {
    x: FiniteQuandle,
    ring: AlexanderRing,
    phi: Cochain,
}

fn catalog() -> Vec<Case> {
    let r3 = AlexanderRing::new(3, &[1, 1]).unwrap();
    let hopf_ring = AlexanderRing::new(0, &[-1, 0, 1]).unwrap();
    let z = AlexanderRing::new(0, &[1, 1]).unwrap();
    vec![
        Case {
            x: FiniteQuandle::trivial(2),
            phi: Cochain::from_values(2, &hopf_ring, [(vec![0, 1], hopf_ring.t()), (vec![1, 0], hopf_ring.one())]),
            ring: hopf_ring,
        },
        Case { x: FiniteQuandle::dihedral(3), phi: modular_extension_cocycle(3, 2, &[1, 1]).unwrap().phi, ring: r3.clone() },
        Case { x: FiniteQuandle::dihedral(3), phi: polynomial_extension_cocycle(3, &[1, 1], 2).unwrap().phi, ring: r3 },
        Case { x: FiniteQuandle::dihedral(3), phi: dihedral_integral_cocycle(3, &z).unwrap(), ring: z },
    ]
}

fn value(d: &Diagram, c: &Case) -> GroupRingElem {
    state_sum(d, &c.x, &c.ring, &c.phi, 1).unwrap().value
}

fn edge_labels(d: &Diagram) -> Vec<String> {
    (0..d.edge_count()).map(|e| d.edge_label(e).to_string()).collect()
}

#[test]
fn kinks_leave_the_sum_unchanged() {
    for text in [HOPF, TREFOIL] {
        let d = parse_pd(text).unwrap();
        for e in edge_labels(&d) {
            for positive in [true, false] {
                let k = d.with_kink(&e, positive).unwrap();
                assert_eq!(k.crossing_count(), d.crossing_count() + 1);
                for c in catalog() {
                    assert_eq!(value(&k, &c), value(&d, &c), "kink on {e}, positive={positive}");
                }
            }
        }
    }
}

#[test]
fn second_moves_leave_the_sum_unchanged() {
    for text in [HOPF, TREFOIL] {
        let d = parse_pd(text).unwrap();
        let labels = edge_labels(&d);
        let mut moves = 0;
        for e in &labels {
            for f in &labels {
                let Ok(m) = d.with_push_over(e, f) else { continue };
                moves += 1;
                assert_eq!(m.crossing_count(), d.crossing_count() + 2);
                for c in catalog() {
                    assert_eq!(value(&m, &c), value(&d, &c), "pushing {e} over {f}");
                }
            }
        }
        assert!(moves > 0);
    }
}

#[test]
fn four_crossing_trefoil_matches() {
    let d = parse_pd(TREFOIL).unwrap();
    let k = d.with_kink("3", false).unwrap();
    assert_eq!(k.crossing_count(), 4);
    let labels = edge_labels(&k);
    let m = labels
        .iter()
        .flat_map(|e| labels.iter().map(move |f| (e, f)))
        .find_map(|(e, f)| k.with_push_over(e, f).ok())
        .unwrap();
    for c in catalog() {
        assert_eq!(value(&m, &c), value(&d, &c));
    }
}

#[test]
fn switched_diagrams_have_as_many_colorings() {
    for text in [HOPF, TREFOIL] {
        let d = parse_pd(text).unwrap();
        let s = d.switched();
        assert!(s.crossings().iter().zip(d.crossings()).all(|(a, b)| a.sign() == -b.sign()));
        for c in catalog() {
            assert_eq!(s.colorings(&c.x).len(), d.colorings(&c.x).len());
        }
    }
}

#[test]
fn base_face_shifts_by_a_power_of_t() {
    let d = parse_pd(TORUS).unwrap();
    let c = &catalog()[2];
    let reference = value(&d, c);
    let n0 = d.numbering().unwrap().unwrap();
    for f in 0..d.face_count() {
        let b = d.with_base(FaceRef::Label(format!("F{f}"))).unwrap();
        assert_eq!(value(&b, c), reference);
        let n = b.numbering().unwrap().unwrap();
        let shift = (n.crossings[0] - n0.crossings[0]).rem_euclid(2);
        assert!(n.crossings.iter().zip(&n0.crossings).all(|(a, b)| (a - b).rem_euclid(2) == shift));
    }
}

#[test]
fn torus_regions_alternate() {
    let d = parse_pd(TORUS).unwrap();
    let n = d.numbering().unwrap().unwrap();
    assert_eq!(n.faces.len(), 2);
    assert_ne!(n.faces[0], n.faces[1]);
    for e in 0..d.edge_count() {
        let (l, r) = (d.face_of(e, Side::Left), d.face_of(e, Side::Right));
        assert_eq!((n.faces[l] - n.faces[r]).rem_euclid(2), 1);
    }
}

#[test]
fn unsolvable_numbering_gives_zero() {
    // mod 3 cannot number the two alternating faces of the torus diagram
    let text = TORUS.replace("mod 2", "mod 3");
    let d = parse_pd(&text).unwrap();
    assert!(d.numbering().unwrap().is_none());
    let c = &catalog()[2];
    assert_eq!(state_sum(&d, &c.x, &c.ring, &c.phi, 1).unwrap().value, GroupRingElem::new());
}

#[test]
fn parallel_matches_serial() {
    let d = parse_pd(TREFOIL).unwrap();
    for c in catalog() {
        let a = state_sum(&d, &c.x, &c.ring, &c.phi, 1).unwrap();
        let b = state_sum(&d, &c.x, &c.ring, &c.phi, 4).unwrap();
        assert_eq!(a.value, b.value);
    }
}

#[test]
fn obstruction_cocycles_give_integers() {
    let x = FiniteQuandle::dihedral(3);
    for (g_mod, a_mod) in [(9u64, 3u64), (15, 3), (27, 3)] {
        let g = AlexanderRing::new(g_mod, &[1, 1]).unwrap();
        let a = AlexanderRing::new(a_mod, &[1, 1]).unwrap();
        let ses = SesSpec::new(g.clone(), &[g.from_int(a_mod as i64)], a).unwrap();
        for eta in [vec![0, 1, 2], vec![0, 2, 1], vec![1, 1, 1]] {
            let phi = ses.obstruction_2cocycle(&x, &QuandleMap::new(eta)).unwrap();
            for text in [HOPF, TREFOIL] {
                let d = parse_pd(text).unwrap();
                let s = state_sum(&d, &x, &g, &phi, 1).unwrap();
                assert_eq!(s.value.as_integer(), Some(s.colorings as i64), "G = Z_{g_mod}");
            }
        }
    }
}

fn random_eta(ring: AlexanderRing, size: usize) -> impl Strategy<Value = (AlexanderRing, Vec<usize>)> {
    let n = ring.size().unwrap();
    prop::collection::vec(0..n, size).prop_map(move |v| (ring.clone(), v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn coboundaries_give_coloring_counts(
        (ring, eta) in prop_oneof![
            random_eta(AlexanderRing::new(3, &[1, 1]).unwrap(), 3),
            random_eta(AlexanderRing::new(2, &[1, 1]).unwrap(), 3),
        ],
        which in 0usize..2,
    ) {
        let x = if ring.modulus() == 3 { FiniteQuandle::dihedral(3) } else { FiniteQuandle::trivial(2) };
        let cx = Complex::new(x.clone(), ring.clone(), Variant::Tq);
        let eta = Cochain::from_values(1, &ring, (0..x.size()).map(|i| (vec![i], ring.element_at(eta[i]))));
        let phi = cx.delta(&eta);
        let d = parse_pd([HOPF, TREFOIL][which]).unwrap();
        let s = state_sum(&d, &x, &ring, &phi, 1).unwrap();
        prop_assert_eq!(s.value.as_integer(), Some(s.colorings as i64));
    }
}
