//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines are always printed. It
//! exits nonzero when the set of failing criteria differs from the known
//! discrepancies below, in either direction.

use std::collections::BTreeSet;
use std::time::Instant;

use quandle_cli::corpus::Corpus;
use quandle_cli::report::{verify_paper, VerificationReport};
use quandle_cli::{Scope, DEFAULT_SEED};
use quandle_core::constructions::{alexander, dihedral};
use quandle_core::knots::{colorings, corpus as diagrams, KnotDiagram};
use quandle_core::FiniteQuandle;

/// Criteria whose published values the computation does not reproduce:
/// QS_4 H_4 and H_6 (criterion 2) and QS_6 H_4 (criterion 3).
const KNOWN_DISCREPANCIES: [u32; 2] = [2, 3];

/// Brute-force colorings, sharing nothing with the search in the library.
fn brute_force_count(d: &KnotDiagram, x: &FiniteQuandle) -> usize {
    let a = d.arc_count();
    let n = x.order();
    let rel: Vec<(usize, usize, usize)> = d
        .crossings()
        .iter()
        .map(|k| (d.arc_of_segment(k.under_src), d.arc_of_segment(k.over_in), d.arc_of_segment(k.under_dst)))
        .collect();
    (0..n.pow(a as u32))
        .filter(|&code| {
            let col: Vec<usize> = (0..a).map(|i| code / n.pow(i as u32) % n).collect();
            rel.iter().all(|&(s, o, t)| x.op(col[s], col[o]) == col[t])
        })
        .count()
}

struct Criterion {
    number: u32,
    title: &'static str,
    rows: &'static [&'static str],
}

const CRITERIA: &[Criterion] = &[
    Criterion { number: 1, title: "QS_4 table reproduction", rows: &["qs4-table"] },
    Criterion {
        number: 2,
        title: "published homology of QS_4",
        rows: &["qs4-homology-4", "qs4-homology-5", "qs4-homology-6"],
    },
    Criterion { number: 3, title: "published homology of QS_6", rows: &["qs6-conj-closure", "qs6-homology-3", "qs6-homology-4"] },
    Criterion {
        number: 4,
        title: "delayed Fibonacci for R_3",
        rows: &[
            "r3-delayed-fibonacci-1",
            "r3-delayed-fibonacci-2",
            "r3-delayed-fibonacci-3",
            "r3-delayed-fibonacci-4",
            "r3-delayed-fibonacci-5",
            "r3-delayed-fibonacci-6",
        ],
    },
    Criterion { number: 5, title: "theta_p nontriviality", rows: &["theta-3", "theta-5", "theta-7"] },
    Criterion { number: 6, title: "R~ family", rows: &["rtilde-3", "rtilde-5", "rtilde-7"] },
    Criterion { number: 7, title: "signed-permutation products", rows: &["signed-product-1", "signed-product-2"] },
    Criterion {
        number: 8,
        title: "coloring counts",
        rows: &["colorings-trefoil-r3", "colorings-figure-eight-r5", "colorings-unknot-qs4"],
    },
    Criterion { number: 9, title: "chirality of the trefoil", rows: &["chirality-trefoil-theta3"] },
    Criterion {
        number: 10,
        title: "invariance suite",
        rows: &["invariance-r1-phi", "invariance-r2-phi", "invariance-r1-theta3", "invariance-r2-theta3"],
    },
    Criterion { number: 11, title: "structural properties", rows: &["boundary-squared", "h1-rank-orbits", "coboundary-shift"] },
];

/// Checks done here rather than in the report, per criterion.
fn extra(number: u32) -> Vec<(String, bool)> {
    match number {
        1 => {
            // the table as printed, rows [0] [1] [2] [3] with [2] = t, [3] = t + 1
            let printed = [[0, 3, 1, 2], [2, 1, 3, 0], [3, 0, 2, 1], [1, 2, 0, 3]];
            let x = alexander(2, &[1, 1, 1]).unwrap().quandle;
            let same = (0..4).all(|a| (0..4).all(|b| x.op(a, b) == printed[a][b]));
            vec![("alexander(2, t^2+t+1) equals the printed table".into(), same)]
        }
        8 => {
            let cases = [
                ("trefoil/R_3", diagrams::trefoil(), dihedral(3), 9),
                ("figure-eight/R_5", diagrams::figure_eight(), dihedral(5), 25),
                ("unknot/R_7", KnotDiagram::unknot(), dihedral(7), 7),
                ("unknot/QS_4", KnotDiagram::unknot(), alexander(2, &[1, 1, 1]).unwrap().quandle, 4),
            ];
            cases
                .into_iter()
                .map(|(name, d, x, want)| {
                    let search = colorings(&d, &x).len();
                    let brute = brute_force_count(&d, &x);
                    (format!("{name}: search {search}, brute force {brute}, expected {want}"), search == want && brute == want)
                })
                .collect()
        }
        _ => Vec::new(),
    }
}

fn main() {
    let start = Instant::now();
    let report: VerificationReport = verify_paper(Scope::Full, &Corpus::builtin(), DEFAULT_SEED);
    let mut failing = BTreeSet::new();
    for c in CRITERIA {
        let mut notes = Vec::new();
        let mut pass = true;
        for name in c.rows {
            match report.row(name) {
                Some(r) if r.pass => {}
                Some(r) => {
                    pass = false;
                    notes.push(format!("{name}: expected {}, computed {}", r.expected, r.computed));
                }
                None => {
                    pass = false;
                    notes.push(format!("{name}: missing from the report"));
                }
            }
        }
        for (what, ok) in extra(c.number) {
            if !ok {
                pass = false;
                notes.push(what);
            }
        }
        if !pass {
            failing.insert(c.number);
        }
        let status = if pass { "PASS" } else { "FAIL" };
        println!("{status} criterion {:>2}: {}", c.number, c.title);
        for n in notes {
            println!("      {n}");
        }
    }
    println!("acceptance finished in {:.1} s", start.elapsed().as_secs_f64());
    let known: BTreeSet<u32> = KNOWN_DISCREPANCIES.into_iter().collect();
    if failing != known {
        println!("unexpected outcome: failing {failing:?}, known discrepancies {known:?}");
        std::process::exit(1);
    }
    println!("failing criteria match the known discrepancies {known:?}");
}
