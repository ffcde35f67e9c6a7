//! Acceptance gate: twelve end-to-end checks, one test (and one pass/fail
//! line) per criterion. Library-level checks drive the public API directly;
//! CLI-level checks spawn the built binary.

use std::process::Command;
use std::sync::OnceLock;

use rla::families::{self, SkewPolynomial};
use rla::harness::{
    corpus, AggregateReport, CorpusConfig, CorpusField, DEFAULT_CORPUS_BUDGET,
};
use rla::structure;
use rla::{
    FiniteField, LatticeMode, RestrictedLieAlgebra, Scalar, SubalgebraLattice, Subspace,
};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const BUDGET: u64 = 1_000_000_000;

fn gf(p: u64) -> FiniteField {
    FiniteField::prime(p).unwrap()
}

fn unit(l: &RestrictedLieAlgebra, i: usize) -> Vec<Scalar> {
    let mut v = vec![0 as Scalar; l.dim()];
    v[i] = l.field().one();
    v
}

fn vadd(f: &FiniteField, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

fn vsub(f: &FiniteField, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(&x, &y)| f.sub(x, y)).collect()
}

fn vzero(v: &[Scalar]) -> bool {
    v.iter().all(|&c| c == 0)
}

/// Shared small-algebra test bed: named instances across several fields, all
/// with at most 5^4 elements so exhaustive element scans stay cheap.
fn fixtures() -> Vec<(String, RestrictedLieAlgebra)> {
    let f2 = gf(2);
    let f3 = gf(3);
    let f4 = FiniteField::new(2, 2, None).unwrap();
    let f5 = gf(5);
    let t3 = SkewPolynomial::from_ints(&f3, &[0, 1]);
    let raw: Vec<(&str, RestrictedLieAlgebra)> = vec![
        ("usmn/gf(2)", families::usmn(&f2)),
        ("usmn/gf(3)", families::usmn(&f3)),
        ("sl2/gf(3)", families::sl2(&f3).unwrap()),
        ("sl2/gf(5)", families::sl2(&f5).unwrap()),
        ("heisenberg/gf(2)", families::heisenberg_null(&f2)),
        ("heisenberg/gf(3)", families::heisenberg_null(&f3)),
        ("torus(2)/gf(4)", families::torus(&f4, 2)),
        ("almost_abelian(2)/gf(3)", families::almost_abelian(&f3, 2).unwrap()),
        ("strongly_abelian(2)/gf(5)", families::strongly_abelian(&f5, 2)),
        (
            "cyclic(t^2+t+1)/gf(2)",
            families::cyclic_from(&SkewPolynomial::from_ints(&f2, &[1, 1, 1])).unwrap(),
        ),
        (
            "cyclic(t^2+1)/gf(3)",
            families::cyclic_from(&SkewPolynomial::from_ints(&f3, &[1, 0, 1])).unwrap(),
        ),
        (
            "prop_solvable([t];1)/gf(3)",
            families::prop_solvable(&f3, &[t3], 1).unwrap(),
        ),
    ];
    let out: Vec<(String, RestrictedLieAlgebra)> =
        raw.into_iter().map(|(n, l)| (n.to_string(), l)).collect();
    for (name, l) in &out {
        assert!(l.element_count() <= 625, "{name} exceeds the element bound");
    }
    out
}

/// One corpus run over the prime fields shared by criteria 2, 4, and 5.
fn family_corpus() -> &'static AggregateReport {
    static R: OnceLock<AggregateReport> = OnceLock::new();
    R.get_or_init(|| {
        let cfg = CorpusConfig {
            fields: vec![
                CorpusField { p: 2, k: 1, max_dim: 5 },
                CorpusField { p: 3, k: 1, max_dim: 5 },
                CorpusField { p: 5, k: 1, max_dim: 5 },
            ],
            budget: DEFAULT_CORPUS_BUDGET,
            sweeps: true,
            theorems: Some(vec!["T1".into(), "T2".into(), "T3".into()]),
        };
        corpus(&cfg).expect("corpus run")
    })
}

/// Every applicable instance holds and at least one instance was applicable.
fn assert_theorem_clean(r: &AggregateReport, id: &str) {
    let fails: Vec<_> = r.assert_failures.iter().filter(|x| x.theorem == id).collect();
    assert!(fails.is_empty(), "{id} assert failures: {fails:?}");
    let mut applicable = 0usize;
    for inst in &r.instances {
        for o in inst.outcomes.iter().filter(|o| o.theorem == id) {
            if o.applicable {
                applicable += 1;
                assert_eq!(o.holds, Some(true), "{id} fails on {}", inst.key);
            }
        }
    }
    assert!(applicable > 0, "{id} was never applicable");
}

#[test]
fn criterion_01_usmn_semimodularity_witness_and_line_span() {
    for p in [2u64, 3] {
        let f = gf(p);
        let l = families::usmn(&f);
        let lat = SubalgebraLattice::enumerate(&l, LatticeMode::Restricted, BUDGET).unwrap();
        let usm = lat.is_upper_semimodular().unwrap();
        assert!(!usm.holds, "usm must fail over gf({p})");
        let w = usm.witness.expect("violation carries a witness");

        // Witness is exactly (<x>_p, Fy) in canonical node indices.
        let xp_closure = l.restricted_closure(&[unit(&l, 0)]);
        assert_eq!(xp_closure.dim(), 2);
        let fy = Subspace::from_vectors(l.field(), 4, &[unit(&l, 2)]);
        let expected =
            vec![lat.index_of(&xp_closure).unwrap(), lat.index_of(&fy).unwrap()];
        assert_eq!(w.nodes, expected, "witness nodes over gf({p})");

        // The span of all one-dimensional restricted subalgebras is
        // span{x^[p], y, z} and it is abelian.
        let odg = structure::one_dim_generated(&l, BUDGET).unwrap();
        let span = Subspace::from_vectors(
            l.field(),
            4,
            &[unit(&l, 1), unit(&l, 2), unit(&l, 3)],
        );
        assert_eq!(odg, span, "one_dim_generated over gf({p})");
        assert!(structure::bracket_span(&l, &odg, &odg).is_zero());
    }
}

#[test]
fn criterion_02_quasi_implies_modular_implies_semimodular_on_corpus() {
    assert_theorem_clean(family_corpus(), "T1");
}

#[test]
fn criterion_03_nilpotent_equivalence_over_gf3_gf5_gf9() {
    let cfg = CorpusConfig {
        fields: vec![
            CorpusField { p: 3, k: 1, max_dim: 5 },
            CorpusField { p: 5, k: 1, max_dim: 4 },
            CorpusField { p: 3, k: 2, max_dim: 3 },
        ],
        budget: DEFAULT_CORPUS_BUDGET,
        sweeps: true,
        theorems: Some(vec!["T5".into()]),
    };
    let r = corpus(&cfg).unwrap();
    assert_theorem_clean(&r, "T5");
    // The equivalence must have been decided everywhere, never skipped.
    let skipped: usize = r.instances.iter().map(|i| i.skipped.len()).sum();
    assert_eq!(skipped, 0, "no instance may dodge the check");
}

#[test]
fn criterion_04_quasi_instances_have_squares_inside_p_image() {
    assert_theorem_clean(family_corpus(), "T2");
}

#[test]
fn criterion_05_dually_atomistic_nilradical_properties() {
    assert_theorem_clean(family_corpus(), "T3");
}

#[test]
fn criterion_06_core_is_restricted_ideal_on_every_fixture_lattice() {
    for (name, l) in fixtures() {
        let lat = SubalgebraLattice::enumerate(&l, LatticeMode::Restricted, BUDGET).unwrap();
        let full = Subspace::full(l.field(), l.dim());
        for i in 0..lat.node_count() {
            let s = lat.node(i);
            let c = structure::core(&l, s).unwrap();
            assert!(s.contains(&c), "{name} node {i}: core escapes the node");
            assert!(
                c.contains(&structure::bracket_span(&l, &full, &c)),
                "{name} node {i}: core is not an ideal"
            );
            let rows: Vec<Vec<Scalar>> = c.basis_rows().map(|r| r.to_vec()).collect();
            assert_eq!(
                l.restricted_closure(&rows),
                c,
                "{name} node {i}: core is not p-closed"
            );
        }
    }
}

#[test]
fn criterion_07_sl2_gf5_lines_verdict_stability_and_short_maximal() {
    let l = families::sl2(&gf(5)).unwrap();
    let lat = SubalgebraLattice::enumerate(&l, LatticeMode::Restricted, BUDGET).unwrap();

    // Every one-dimensional subspace is restricted: x^[5] stays on the line,
    // and the line shows up as a lattice node. There are (5^3-1)/4 = 31 lines.
    let mut seen = 0usize;
    for x in l.coordinate_vectors().filter(|x| !vzero(x)) {
        let line = Subspace::from_vectors(l.field(), 3, &[x.clone()]);
        assert!(line.contains_vec(&l.p_power_vec(&x)), "p-power leaves span of {x:?}");
        assert!(lat.index_of(&line).is_some(), "line of {x:?} missing from lattice");
        seen += 1;
    }
    assert_eq!(seen, 124);
    let one_dim = (0..lat.node_count()).filter(|&i| lat.node(i).dim() == 1).count();
    assert_eq!(one_dim, 31);

    // Chain-length verdict is stable across independent enumerations.
    let lat2 = SubalgebraLattice::enumerate(&l, LatticeMode::Restricted, BUDGET).unwrap();
    assert_eq!(lat.nodes(), lat2.nodes(), "enumeration order drifted");
    let j1 = lat.j_algebra().unwrap();
    let j2 = lat2.j_algebra().unwrap();
    assert_eq!(
        serde_json::to_value(&j1).unwrap(),
        serde_json::to_value(&j2).unwrap(),
        "verdict not stable"
    );

    // A one-dimensional maximal node exists (a non-split torus), so maximal
    // chains have different lengths and the lattice is not graded.
    assert!(
        lat.maximal_nodes().iter().any(|&m| lat.node(m).dim() == 1),
        "no one-dimensional maximal node"
    );
    assert!(!j1.is_j);
    assert_eq!(j1.d, None);
}

#[test]
fn criterion_08_decomposition_clauses_and_exhaustive_uniqueness() {
    for (name, l) in fixtures() {
        let f = l.field().clone();
        for x in l.coordinate_vectors() {
            let cyc = l.restricted_closure(&[x.clone()]);
            let (xs, xn) = structure::jordan_chevalley(&l, &x);
            let (s, n) = (xs.coords(), xn.coords());

            // The five contract clauses.
            assert_eq!(vadd(&f, s, n), x, "{name}: parts do not sum back");
            assert!(vzero(&l.bracket_vec(s, n)), "{name}: parts do not commute");
            assert!(structure::element_class(&l, s).semisimple, "{name}: bad s-part");
            assert!(structure::element_class(&l, n).p_nilpotent, "{name}: bad n-part");
            assert!(cyc.contains_vec(s) && cyc.contains_vec(n), "{name}: parts escape");

            // Brute force over the cyclic closure: exactly one valid split.
            let mut matches = 0usize;
            for cand in cyc.elements() {
                let rest = vsub(&f, &x, &cand);
                if !vzero(&l.bracket_vec(&cand, &rest)) {
                    continue;
                }
                if structure::element_class(&l, &cand).semisimple
                    && structure::element_class(&l, &rest).p_nilpotent
                {
                    assert_eq!(cand, s.to_vec(), "{name}: different split for {x:?}");
                    matches += 1;
                }
            }
            assert_eq!(matches, 1, "{name}: split of {x:?} not unique");
        }
    }
}

#[test]
fn criterion_09_power_map_folds_through_adjoint_matrices() {
    for (idx, (name, l)) in fixtures().into_iter().enumerate() {
        let f = l.field().clone();
        let elems: Vec<Scalar> = f.elements().collect();
        let mut rng = ChaCha8Rng::seed_from_u64(0xACCE5500 + idx as u64);
        let p = u64::from(f.p());
        for _ in 0..1000 {
            let x: Vec<Scalar> =
                (0..l.dim()).map(|_| elems[rng.gen_range(0..elems.len())]).collect();
            assert_eq!(
                l.ad_matrix_vec(&l.p_power_vec(&x)),
                l.ad_matrix_vec(&x).pow(p),
                "{name}: folding fails on {x:?}"
            );
        }
    }
}

#[test]
fn criterion_10_irreducibility_matches_minimal_restricted_lattices() {
    let fields =
        [gf(2), gf(3), FiniteField::new(2, 2, None).unwrap()];
    let mut pairs = 0usize;
    for f in &fields {
        let elems: Vec<Scalar> = f.elements().collect();
        let q = elems.len() as u64;
        for deg in 1..=3usize {
            for code in 0..q.pow(deg as u32) {
                let mut c = code;
                let mut coeffs: Vec<Scalar> = Vec::with_capacity(deg + 1);
                for _ in 0..deg {
                    coeffs.push(elems[(c % q) as usize]);
                    c /= q;
                }
                coeffs.push(f.one());
                let poly = SkewPolynomial::new(f, coeffs);
                let irr = families::sp_irreducible(&poly, BUDGET).unwrap();
                let l = families::cyclic_from(&poly).unwrap();
                let lat =
                    SubalgebraLattice::enumerate(&l, LatticeMode::Restricted, BUDGET)
                        .unwrap();
                let has_proper = (0..lat.node_count()).any(|i| {
                    let d = lat.node(i).dim();
                    d > 0 && d < deg
                });
                assert_eq!(
                    irr, !has_proper,
                    "{poly:?} over gf({}): irreducible={irr} but proper nonzero node={has_proper}",
                    f.q()
                );
                pairs += 1;
            }
        }
    }
    assert_eq!(pairs, 14 + 39 + 84);
}

#[test]
fn criterion_11_mutated_power_map_rejected_with_witness() {
    let bin = env!("CARGO_BIN_EXE_rla");
    let dir = std::env::temp_dir().join(format!("rla-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("sl2.json");
    let bad = dir.join("broken.json");

    let st = Command::new(bin)
        .args(["gen", "sl2", "--p", "5", "-o", good.to_str().unwrap()])
        .env_remove("RLA_BUDGET")
        .status()
        .unwrap();
    assert!(st.success());

    let mut doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&good).unwrap()).unwrap();
    doc["pmap"][1] = serde_json::json!([1, 0, 0]);
    std::fs::write(&bad, serde_json::to_string(&doc).unwrap()).unwrap();

    let out = Command::new(bin)
        .args(["validate", bad.to_str().unwrap()])
        .env_remove("RLA_BUDGET")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1), "validate must exit 1");
    let rep: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rep["report"]["ok"], serde_json::json!(false));
    let violations = rep["report"]["violations"].as_array().unwrap();
    assert!(
        violations.iter().any(|v| v["axiom"] == serde_json::json!("pmap_compat")
            && v["witness"] == serde_json::json!([1])),
        "missing pmap_compat witness [1] in {violations:?}"
    );
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn criterion_12_corpus_runs_are_byte_identical() {
    let bin = env!("CARGO_BIN_EXE_rla");
    let dir = std::env::temp_dir().join(format!("rla-determinism-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("cfg.json");
    std::fs::write(&cfg, r#"{"fields":[{"p":2,"max_dim":3}],"sweeps":true}"#).unwrap();

    let run = || {
        let out = Command::new(bin)
            .args(["corpus", "--config", cfg.to_str().unwrap()])
            .env_remove("RLA_BUDGET")
            .output()
            .unwrap();
        assert!(out.status.success(), "corpus run failed");
        out.stdout
    };
    let a = run();
    let b = run();
    assert!(!a.is_empty());
    assert_eq!(a, b, "aggregate reports differ between identical runs");
    std::fs::remove_dir_all(&dir).ok();
}
