//! End-to-end checks that cross module boundaries: constructions feed the
//! homology code, whose cocycles feed the knot state sums.

use quandle_core::constructions::{alexander, dihedral};
use quandle_core::homology::{cocycle_space, cohomology, is_coboundary, ChainComplex, Theory};
use quandle_core::io::{parse_cyc, parse_qnd, write_cyc, write_qnd};
use quandle_core::knots::{
    alexander_coloring_count, cocycle_invariant_2, cocycle_invariant_3, colorings, corpus, parse_diagram, write_diagram,
    KnotDiagram,
};
use quandle_core::FiniteQuandle;

fn nontrivial_cocycle(x: &FiniteQuandle, degree: usize, m: u64) -> quandle_core::Cochain {
    let c = ChainComplex::new(x, Theory::Quandle).unwrap();
    cocycle_space(&c, degree, m)
        .unwrap()
        .into_iter()
        .find(|f| !is_coboundary(&c, f).unwrap().is_coboundary)
        .expect("cohomology is nonzero")
}

#[test]
fn computed_3_cocycle_detects_the_trefoil() {
    let r3 = dihedral(3);
    let theta = nontrivial_cocycle(&r3, 3, 3);
    let t = cocycle_invariant_3(&corpus::trefoil(), &r3, &theta).unwrap();
    assert!(!t.is_trivial(), "{t}");
    assert_eq!(t.total(), 27);
    let u = cocycle_invariant_3(&KnotDiagram::unknot(), &r3, &theta).unwrap();
    assert!(u.is_trivial());
    assert_eq!(cocycle_invariant_3(&corpus::trefoil().mirror(), &r3, &theta).unwrap(), t.negated());
}

#[test]
fn computed_2_cocycle_is_a_diagram_invariant() {
    let qs4 = alexander(2, &[1, 1, 1]).unwrap().quandle;
    let phi = nontrivial_cocycle(&qs4, 2, 2);
    let t = cocycle_invariant_2(&corpus::trefoil(), &qs4, &phi).unwrap();
    for moved in [corpus::trefoil_r1(), corpus::trefoil_r2()] {
        assert_eq!(cocycle_invariant_2(&moved, &qs4, &phi).unwrap(), t);
    }
}

#[test]
fn alexander_colorings_agree_with_linear_algebra() {
    for (n, h) in [(3, vec![1, 1]), (5, vec![-1, 3, -1]), (2, vec![1, 1, 1]), (7, vec![2, 1])] {
        let a = alexander(n, &h).unwrap();
        for (name, d) in corpus::all() {
            let search = colorings(&d, &a.quandle).len();
            assert_eq!(alexander_coloring_count(&d, &a.module), search.into(), "{name} over Z_{n}[t]/({h:?})");
        }
    }
}

#[test]
fn universal_coefficients_in_low_degrees() {
    // H^n(X; Z_p) = Hom(H_n, Z_p) + Ext(H_{n-1}, Z_p)
    for (x, p) in [(dihedral(3), 3), (dihedral(5), 5), (alexander(2, &[1, 1, 1]).unwrap().quandle, 2)] {
        let c = ChainComplex::new(&x, Theory::Quandle).unwrap();
        for n in 2..=3 {
            let h_n = c.homology(n).unwrap();
            let h_prev = c.homology(n - 1).unwrap();
            let expected = h_n.rank() + h_n.p_rank(p) + h_prev.p_rank(p);
            let got = cohomology(&c, n, p).unwrap();
            assert_eq!(got.p_rank(p), expected, "H^{n} mod {p} of order {}", x.order());
            assert!(cocycle_space(&c, n, p).unwrap().len() >= expected);
        }
    }
}

#[test]
fn text_formats_round_trip_through_the_pipeline() {
    let x = alexander(3, &[1, 1]).unwrap().quandle;
    let back = parse_qnd(&write_qnd(&x, None)).unwrap().quandle;
    assert_eq!(back, x);
    let theta = nontrivial_cocycle(&back, 3, 3);
    assert_eq!(parse_cyc(&write_cyc(&theta)).unwrap(), theta);
    for (name, d) in corpus::all() {
        let again = parse_diagram(&write_diagram(&d)).unwrap();
        assert_eq!(colorings(&again, &x).len(), colorings(&d, &x).len(), "{name}");
    }
}
