//! `verify-paper`: recomputes each published or derived value and reports
//! expected against computed, one tab-separated line per check.

use std::fmt::Write as _;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use quandle_core::cocycle::{coboundary, mochizuki_satoh};
use quandle_core::constructions::{
    alexander, build_rtilde, conj, dihedral, dynamical_extension, factor_extension, signed_perm_mul, ConjDirection,
    SignedPermutation,
};
use quandle_core::homology::{
    cohomology, is_coboundary, quandle_homology, verify_slice, ChainComplex, FGAbelianGroup, Theory,
};
use quandle_core::knots::{alexander_coloring_count, cocycle_invariant_2, cocycle_invariant_3, colorings};
use quandle_core::{
    check_3cocycle, check_homomorphism, find_isomorphism, is_connected, orbits, verify_good_involution, Cochain,
    FiniteQuandle, SearchLimits,
};

use crate::corpus::Corpus;
use crate::Scope;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRow {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
    pub millis: u128,
}

#[derive(Clone, Debug, Default)]
pub struct VerificationReport {
    pub rows: Vec<CheckRow>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.rows.iter().filter(|r| !r.pass).map(|r| r.name.as_str()).collect()
    }

    pub fn row(&self, name: &str) -> Option<&CheckRow> {
        self.rows.iter().find(|r| r.name == name)
    }

    /// `PASS|FAIL <tab> name <tab> expected=… <tab> computed=…`, then a
    /// `#` summary line.
    pub fn render(&self, timings: bool) -> String {
        let mut out = String::new();
        for r in &self.rows {
            let status = if r.pass { "PASS" } else { "FAIL" };
            let _ = write!(out, "{status}\t{}\texpected={}\tcomputed={}", r.name, r.expected, r.computed);
            if timings {
                let _ = write!(out, "\t{}ms", r.millis);
            }
            out.push('\n');
        }
        let passed = self.rows.iter().filter(|r| r.pass).count();
        let _ = writeln!(out, "# {passed}/{} checks passed", self.rows.len());
        out
    }
}

/// What a check found. A setup problem (missing or invalid corpus file)
/// is an `Err`.
struct Outcome {
    expected: String,
    computed: String,
    pass: bool,
}

impl Outcome {
    fn compare<T: PartialEq + ToString>(expected: T, computed: T) -> Self {
        Outcome { pass: expected == computed, expected: expected.to_string(), computed: computed.to_string() }
    }
}

type Check = Box<dyn Fn(&Corpus, u64) -> Result<Outcome, String> + Send + Sync>;

fn s<E: ToString>(e: E) -> String {
    e.to_string()
}

fn homology_check(file: &'static str, n: usize, expected: &'static str) -> Check {
    Box::new(move |c, _| {
        let x = c.quandle(file)?.quandle;
        let want: FGAbelianGroup = expected.parse().map_err(s)?;
        Ok(Outcome::compare(want, quandle_homology(&x, n).map_err(s)?))
    })
}

fn qs6(c: &Corpus) -> Result<FiniteQuandle, String> {
    let g = c.group("s4.grp")?;
    let labels = g.labels().ok_or("s4.grp has no labels")?;
    // the six 4-cycles, e.g. `(1,2,3,4)`
    let seeds: Vec<usize> = (0..g.order()).filter(|&i| labels[i].matches(',').count() == 3 && labels[i].matches('(').count() == 1).collect();
    Ok(conj(&g, 1, &seeds, ConjDirection::Right).map_err(s)?.quandle)
}

fn qs6_homology(n: usize, expected: &'static str) -> Check {
    Box::new(move |c, _| {
        let want: FGAbelianGroup = expected.parse().map_err(s)?;
        Ok(Outcome::compare(want, quandle_homology(&qs6(c)?, n).map_err(s)?))
    })
}

fn fibonacci(n: usize) -> Check {
    const F: [u64; 6] = [0, 0, 1, 1, 1, 2];
    Box::new(move |c, _| {
        let x = c.quandle("r3.qnd")?.quandle;
        let want = FGAbelianGroup::new(0, std::iter::repeat(3).take(F[n - 1] as usize));
        let h = quandle_homology(&x, n).map_err(s)?;
        Ok(Outcome::compare(want, h.torsion_subgroup()))
    })
}

fn theta(p: u64) -> Check {
    Box::new(move |c, _| {
        let x = c.quandle(&format!("r{p}.qnd"))?.quandle;
        let theta = c.cochain(&format!("theta{p}.cyc"))?;
        let expected = format!("cocycle, not a coboundary, H^3 = Z_{p}");
        if theta != mochizuki_satoh(p).map_err(s)? {
            return Ok(Outcome { expected, computed: "file differs from the formula".into(), pass: false });
        }
        let cocycle = check_3cocycle(&x, &theta).is_ok();
        let complex = ChainComplex::new(&x, Theory::Quandle).map_err(s)?;
        let exact = is_coboundary(&complex, &theta).map_err(s)?.is_coboundary;
        let h3 = cohomology(&complex, 3, p).map_err(s)?;
        let computed = format!(
            "{}, {}, H^3 = {h3}",
            if cocycle { "cocycle" } else { "not a cocycle" },
            if exact { "a coboundary" } else { "not a coboundary" }
        );
        Ok(Outcome { pass: computed == expected, expected, computed })
    })
}

fn rtilde(n: usize) -> Check {
    Box::new(move |_, _| {
        let m = 2 * n + 1;
        let r = build_rtilde(n).map_err(s)?;
        let x = r.symmetric.quandle();
        let base = dihedral(m);
        let rho_ok = verify_good_involution(x, r.symmetric.rho()).is_ok();
        let p = &r.projection;
        let fibers = p.fiber_sizes();
        let constant = p.is_surjective() && check_homomorphism(p, x, &base) && fibers.iter().all(|&f| f == fibers[0]);
        let round_trip = factor_extension(p, x, &base)
            .and_then(|fe| {
                let e = dynamical_extension(&base, &fe.alpha)?;
                Ok(fe.isomorphism.is_bijective() && check_homomorphism(&fe.isomorphism, x, &e))
            })
            .unwrap_or(false);
        let describe = |g: usize, c: usize, q: usize, conn: bool, inv: bool, rho: bool, fib: bool, rt: bool| {
            format!(
                "|G|={g} |C(a)|={c} |X|={q} {} {} rho {} fibers {} factor {}",
                if conn { "connected" } else { "disconnected" },
                if inv { "involutory" } else { "not-involutory" },
                if rho { "ok" } else { "bad" },
                if fib { "constant" } else { "uneven" },
                if rt { "round-trips" } else { "fails" }
            )
        };
        let expected = describe(m << m, 1 << (n + 1), m << n, true, false, true, true, true);
        let computed = describe(
            r.g.signed.group.order(),
            r.centralizer.len(),
            x.order(),
            is_connected(x),
            x.is_involutory(),
            rho_ok,
            constant,
            round_trip,
        );
        Ok(Outcome { pass: computed == expected, expected, computed })
    })
}

fn signed_product(u: &'static str, v: &'static str, expected: &'static str) -> Check {
    Box::new(move |_, _| {
        let parse = |t: &str| t.parse::<SignedPermutation>().map_err(s);
        let w = signed_perm_mul(&parse(u)?, &parse(v)?).map_err(s)?;
        Ok(Outcome::compare(expected.to_string(), w.to_string()))
    })
}

fn coloring_count(diagram: &'static str, quandle: &'static str, module: (u64, &'static [i64]), expected: usize) -> Check {
    Box::new(move |c, _| {
        let d = c.diagram(diagram)?;
        let x = c.quandle(quandle)?.quandle;
        let alex = alexander(module.0, module.1).map_err(s)?;
        if alex.quandle != x {
            return Err(format!("{quandle} is not the Alexander quandle used as the oracle"));
        }
        let found = colorings(&d, &x).len();
        let linear = alexander_coloring_count(&d, &alex.module);
        let computed = format!("{found} (linear algebra: {linear})");
        let pass = found == expected && linear == expected.into();
        Ok(Outcome { expected: format!("{expected} (linear algebra: {expected})"), computed, pass })
    })
}

/// `(quandle, cocycle, shadow?)` for the two state sums.
const PHI: (&str, &str, bool) = ("qs4.qnd", "qs4-phi.cyc", false);
const THETA3: (&str, &str, bool) = ("r3.qnd", "theta3.cyc", true);

fn state_sum(c: &Corpus, diagram: &str, which: (&str, &str, bool)) -> Result<String, String> {
    let d = c.diagram(diagram)?;
    let x = c.quandle(which.0)?.quandle;
    let f = c.cochain(which.1)?;
    let v = if which.2 { cocycle_invariant_3(&d, &x, &f) } else { cocycle_invariant_2(&d, &x, &f) };
    Ok(v.map_err(s)?.to_string())
}

fn chirality() -> Check {
    Box::new(|c, _| {
        let t = state_sum(c, "trefoil.pdq", THETA3)?;
        let m = state_sum(c, "mirror-trefoil.pdq", THETA3)?;
        Ok(Outcome { pass: t != m, expected: "distinct multisets".into(), computed: format!("{t} vs {m}") })
    })
}

fn invariance(other: &'static str, which: (&'static str, &'static str, bool)) -> Check {
    Box::new(move |c, _| {
        let t = state_sum(c, "trefoil.pdq", which)?;
        let o = state_sum(c, other, which)?;
        Ok(Outcome::compare(t, o))
    })
}

fn boundary_squared() -> Check {
    Box::new(|c, _| {
        let mut checked = 0;
        let mut bad = Vec::new();
        for name in Corpus::quandle_names() {
            let q = c.quandle(name)?;
            for theory in Theory::ALL {
                let complex = if theory.is_symmetric() {
                    let Some(rho) = &q.rho else { continue };
                    ChainComplex::symmetric(&verify_good_involution(&q.quandle, rho).map_err(|v| v[0].to_string())?, theory)
                } else {
                    ChainComplex::new(&q.quandle, theory).map_err(s)?
                };
                for n in 1..=3 {
                    let slice = complex.slice(n).map_err(s)?;
                    checked += 1;
                    if let Err(e) = verify_slice(&slice) {
                        bad.push(format!("{name} {theory} {n}: {e}"));
                    }
                }
            }
        }
        let computed = if bad.is_empty() { format!("0 in all {checked} slices") } else { bad.join("; ") };
        Ok(Outcome { pass: bad.is_empty(), expected: format!("0 in all {checked} slices"), computed })
    })
}

fn h1_orbits() -> Check {
    Box::new(|c, _| {
        let mut expected = Vec::new();
        let mut computed = Vec::new();
        for name in Corpus::quandle_names() {
            let x = c.quandle(name)?.quandle;
            expected.push(format!("{name}:{}", orbits(&x).len()));
            computed.push(format!("{name}:{}", quandle_homology(&x, 1).map_err(s)?.rank()));
        }
        Ok(Outcome::compare(expected.join(" "), computed.join(" ")))
    })
}

fn random_cochain(x: &FiniteQuandle, arity: usize, m: u64, rng: &mut StdRng) -> Cochain {
    let values = (0..x.order().pow(arity as u32)).map(|_| rng.gen_range(0..m as i64)).collect();
    let mut f = Cochain::from_values(arity, x.order(), m, values).expect("shape");
    // keep it a quandle cochain: zero on (a, a)
    if arity == 2 {
        for a in 0..x.order() {
            f.set(&[a, a], 0);
        }
    }
    f
}

fn coboundary_shift() -> Check {
    Box::new(|c, seed| {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut differ = Vec::new();
        for which in [PHI, THETA3] {
            let x = c.quandle(which.0)?.quandle;
            let f = c.cochain(which.1)?;
            let arity = f.arity() - 1;
            let shifted = f.add(&coboundary(&x, &random_cochain(&x, arity, f.modulus(), &mut rng)));
            for diagram in ["trefoil.pdq", "mirror-trefoil.pdq", "figure-eight.pdq"] {
                let d = c.diagram(diagram)?;
                let (a, b) = if which.2 {
                    (cocycle_invariant_3(&d, &x, &f), cocycle_invariant_3(&d, &x, &shifted))
                } else {
                    (cocycle_invariant_2(&d, &x, &f), cocycle_invariant_2(&d, &x, &shifted))
                };
                if a.map_err(s)? != b.map_err(s)? {
                    differ.push(format!("{} on {diagram}", which.1));
                }
            }
        }
        let computed = if differ.is_empty() { "unchanged".to_string() } else { format!("changed: {}", differ.join(", ")) };
        Ok(Outcome { pass: differ.is_empty(), expected: "unchanged".into(), computed })
    })
}

fn qs4_table() -> Check {
    Box::new(|c, _| {
        let show = |x: &FiniteQuandle| x.rows().iter().map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>().join(" / ");
        let printed = c.quandle("qs4.qnd")?.quandle;
        let built = alexander(2, &[1, 1, 1]).map_err(s)?.quandle;
        Ok(Outcome::compare(show(&printed), show(&built)))
    })
}

fn qs6_closure() -> Check {
    Box::new(|c, _| {
        let x = qs6(c)?;
        let bundled = c.quandle("qs6.qnd")?.quandle;
        let iso = find_isomorphism(&x, &bundled, &SearchLimits::default()).map_err(s)?.is_some();
        let describe = |n: usize, conn: bool, iso: bool| {
            format!("order {n}, {}, {} qs6.qnd", if conn { "connected" } else { "disconnected" }, if iso { "isomorphic to" } else { "differs from" })
        };
        Ok(Outcome::compare(describe(6, true, true), describe(x.order(), is_connected(&x), iso)))
    })
}

fn checks(scope: Scope) -> Vec<(String, Check)> {
    let mut v: Vec<(String, Check)> = vec![
        ("qs4-table".into(), qs4_table()),
        ("qs4-homology-4".into(), homology_check("qs4.qnd", 4, "Z_4 + Z_2^4")),
        ("qs4-homology-5".into(), homology_check("qs4.qnd", 5, "Z_4 + Z_2^5")),
    ];
    if scope == Scope::Full {
        v.push(("qs4-homology-6".into(), homology_check("qs4.qnd", 6, "Z_4 + Z_2^9")));
    }
    v.push(("qs6-conj-closure".into(), qs6_closure()));
    v.push(("qs6-homology-3".into(), qs6_homology(3, "Z_3 + Z_8")));
    v.push(("qs6-homology-4".into(), qs6_homology(4, "Z_3 + Z_8")));
    for n in 1..=6 {
        v.push((format!("r3-delayed-fibonacci-{n}"), fibonacci(n)));
    }
    for p in [3, 5, 7] {
        v.push((format!("theta-{p}"), theta(p)));
    }
    for n in 1..=3 {
        v.push((format!("rtilde-{}", 2 * n + 1), rtilde(n)));
    }
    v.push(("signed-product-1".into(), signed_product("(1,5,4,-3,-2)", "(5,1,2,3,4)", "(-2,1,5,4,-3)")));
    v.push(("signed-product-2".into(), signed_product("(5,1,2,3,4)", "(1,5,4,-3,-2)", "(5,4,3,-2,-1)")));
    v.push(("colorings-trefoil-r3".into(), coloring_count("trefoil.pdq", "r3.qnd", (3, &[1, 1]), 9)));
    v.push(("colorings-figure-eight-r5".into(), coloring_count("figure-eight.pdq", "r5.qnd", (5, &[1, 1]), 25)));
    v.push(("colorings-unknot-qs4".into(), coloring_count("unknot.pdq", "qs4.qnd", (2, &[1, 1, 1]), 4)));
    v.push(("chirality-trefoil-theta3".into(), chirality()));
    v.push(("invariance-r1-phi".into(), invariance("trefoil-r1.pdq", PHI)));
    v.push(("invariance-r2-phi".into(), invariance("trefoil-r2.pdq", PHI)));
    v.push(("invariance-r1-theta3".into(), invariance("trefoil-r1.pdq", THETA3)));
    v.push(("invariance-r2-theta3".into(), invariance("trefoil-r2.pdq", THETA3)));
    v.push(("boundary-squared".into(), boundary_squared()));
    v.push(("h1-rank-orbits".into(), h1_orbits()));
    v.push(("coboundary-shift".into(), coboundary_shift()));
    v
}

/// Runs every check in `scope` concurrently; rows keep the fixed order.
pub fn verify_paper(scope: Scope, corpus: &Corpus, seed: u64) -> VerificationReport {
    let list = checks(scope);
    let rows = std::thread::scope(|sc| {
        let handles: Vec<_> = list
            .iter()
            .map(|(name, check)| {
                sc.spawn(move || {
                    let start = Instant::now();
                    let outcome = check(corpus, seed);
                    let millis = start.elapsed().as_millis();
                    match outcome {
                        Ok(o) => CheckRow { name: name.clone(), expected: o.expected, computed: o.computed, pass: o.pass, millis },
                        Err(e) => CheckRow {
                            name: name.clone(),
                            expected: "-".into(),
                            computed: format!("setup failure: {e}"),
                            pass: false,
                            millis,
                        },
                    }
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("check panicked")).collect()
    });
    VerificationReport { rows }
}
