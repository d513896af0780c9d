//! Acceptance gate: one test per criterion, each printing a single
//! pass/fail line. Criterion 1 pins the published codegree sets, criterion 2
//! round-trips the shipped catalog through the classifier, criterion 3 runs
//! the property suites over the catalog plus a batch of small groups, and
//! criterion 4 cross-checks kernels and codegrees against a complex-float
//! oracle.

use std::collections::BTreeSet;
use std::time::Instant;

use codegree::builders::{self, BuiltGroup};
use codegree::catalog;
use codegree::chartab::{self, CodegreeReport};
use codegree::classify;
use codegree::dsl;
use codegree::fq;
use codegree::structure;

fn built(text: &str) -> BuiltGroup {
    builders::build(&dsl::parse_spec(text).unwrap())
        .unwrap_or_else(|e| panic!("cannot build {}: {}", text, e))
}

fn report_of(text: &str) -> (BuiltGroup, CodegreeReport) {
    let b = built(text);
    let r = chartab::codegree_report(&b.group)
        .unwrap_or_else(|e| panic!("cannot analyze {}: {}", text, e));
    (b, r)
}

fn catalog_path() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../catalog/default.txt")
}

/// Groups of order at most 200 used to widen the property and oracle suites
/// beyond the catalog.
const SMALL_FIXTURES: &[&str] = &[
    "cyclic(2)",
    "cyclic(3)",
    "cyclic(4)",
    "cyclic(5)",
    "cyclic(6)",
    "cyclic(8)",
    "cyclic(9)",
    "cyclic(12)",
    "cyclic(30)",
    "elemab(2,2)",
    "elemab(2,3)",
    "elemab(3,2)",
    "elemab(5,2)",
    "dirprod(cyclic(4),cyclic(3))",
    "dirprod(elemab(2,2),cyclic(9))",
    "dirprod(frobsinger(2,3,1),cyclic(5))",
    "dirprod(frobsinger(2,3,1),frobsinger(2,3,1))",
    "frobsinger(2,3,1)",
    "frobsinger(2,3,2)",
    "frobsinger(2,5,1)",
    "frobsinger(3,7,1)",
    "frobsinger(4,3,1)",
    "frobsinger(5,11,1)",
    "sdp(2,2,[[[0,1],[1,0]]],complement=\"C2\")",
    "named(\"SL2of3\")",
    "named(\"TwoStepFrobenius\",2,3,2,1)",
    "named(\"HomocyclicInv\",3,2,1)",
    "named(\"HomocyclicInv\",3,1,2)",
    "named(\"Q8onCq2\",3)",
    "named(\"D8onC3sq\")",
];

#[test]
fn criterion_1_published_codegree_sets() {
    let cases: &[(&str, &[u64])] = &[
        ("dirprod(elemab(2,1),elemab(3,1))", &[1, 2, 3, 6]),
        ("named(\"Q8onCq2\",5)", &[1, 2, 4, 25]),
        ("named(\"Q8onCq2\",3)", &[1, 2, 4, 9]),
        ("frobsinger(4,3,1)", &[1, 2, 4, 9]),
        ("named(\"HomocyclicInv\",3,2,1)", &[1, 2, 3, 9]),
        ("sdp(7,2,[[[2,0],[0,4]]],complement=\"C3\")", &[1, 3, 7, 49]),
        ("named(\"SL2of3\")", &[1, 3, 4, 12]),
        ("named(\"D8onC3sq\")", &[1, 2, 4, 18]),
        ("named(\"Pauli16onC5sq\")", &[1, 2, 8, 50]),
        ("named(\"ESminus32onC3p4\")", &[1, 2, 8, 162]),
        ("dirprod(frobsinger(3,7,1),cyclic(3))", &[1, 3, 7, 21]),
        ("named(\"TwoStepFrobenius\",2,3,2,1)", &[1, 2, 3, 8]),
        ("named(\"TwoStepFrobenius\",3,7,2,1)", &[1, 3, 7, 24]),
        ("sl2(2)", &[1, 12, 15, 20]),
        ("sl2(3)", &[1, 56, 63, 72]),
        ("sl2(4)", &[1, 240, 255, 272]),
    ];
    for (text, want) in cases {
        let start = Instant::now();
        let (_, r) = report_of(text);
        let elapsed = start.elapsed();
        assert_eq!(
            r.cod_set, *want,
            "criterion 1: FAIL — {} computed {:?}",
            text, r.cod_set
        );
        assert!(
            elapsed.as_secs() < 10,
            "criterion 1: FAIL — {} took {:?}, budget is 10 s",
            text,
            elapsed
        );
    }
    println!("criterion 1 (published codegree sets, each under 10 s): PASS");
}

#[test]
fn criterion_2_classifier_round_trip() {
    let start = Instant::now();
    let entries = catalog::load_catalog(&catalog_path()).unwrap();
    assert!(!entries.is_empty(), "criterion 2: FAIL — catalog is empty");
    let report = catalog::classification_round_trip(&entries, 0).unwrap();
    for r in &report.results {
        assert!(
            r.failures.is_empty(),
            "criterion 2: FAIL — line {} ({}): {:?}",
            r.line,
            r.entry,
            r.failures
        );
    }
    // The prime-power negative also records its codegree count as evidence.
    let d8 = built("sdp(2,2,[[[0,1],[1,0]]],complement=\"C2\")");
    let verdict = classify::classify_built(&d8).unwrap();
    assert_eq!(verdict.label, "PrimePowerOutOfScope");
    assert!(verdict
        .evidence
        .iter()
        .any(|e| e.predicate == "codSetSize" && e.result == "3"));
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() < 120,
        "criterion 2: FAIL — verify took {:?}, budget is 2 min",
        elapsed
    );
    println!(
        "criterion 2 (catalog round trip, {} entries in {:?}): PASS",
        report.results.len(),
        elapsed
    );
}

fn check_orthogonality(r: &CodegreeReport) {
    let t = &r.table;
    let p = t.prime;
    let k = t.classes.count();
    let gp = t.classes.group.order() % p;
    for i in 0..t.count() {
        for i2 in 0..t.count() {
            let mut acc = 0u64;
            for j in 0..k {
                let conj = t.values[i2][t.classes.inverse_class[j]];
                acc = (acc + t.classes.sizes[j] % p * t.values[i][j] % p * conj) % p;
            }
            let want = if i == i2 { gp } else { 0 };
            assert_eq!(acc, want, "row orthogonality failed at ({}, {})", i, i2);
        }
    }
}

#[test]
fn criterion_3_property_suites() {
    let mut specs: Vec<String> = catalog::load_catalog(&catalog_path())
        .unwrap()
        .iter()
        .map(|e| e.text.clone())
        .collect();
    specs.extend(SMALL_FIXTURES.iter().map(|s| s.to_string()));
    specs.sort();
    specs.dedup();
    assert!(
        specs.len() >= 20 + 10,
        "criterion 3: FAIL — fixture pool too small"
    );

    for text in &specs {
        let (b, r) = report_of(text);
        let g = &b.group;
        let order = g.order();

        // sum of squared degrees, and modular orthogonality
        let sum_sq: u64 = r.table.degrees.iter().map(|d| d * d).sum();
        assert_eq!(sum_sq, order, "degree squares of {}", text);
        check_orthogonality(&r);

        // cod * degree * |ker| = |G| for every character
        for c in &r.per_char {
            assert_eq!(
                c.codegree * c.degree * c.kernel_order,
                order,
                "codegree identity for {}",
                text
            );
        }

        // every prime divisor of |G| divides some codegree
        for (p, _) in structure::factorize(order) {
            assert!(
                r.cod_set.iter().any(|c| c % p == 0),
                "{} has no codegree divisible by {}",
                text,
                p
            );
        }

        // |G:ker| <= cod^2, equality only for the trivial character
        for c in &r.per_char {
            let index = order / c.kernel_order;
            let bound = c.codegree * c.codegree;
            if c.degree == 1 && c.kernel_order == order {
                assert_eq!(index, bound, "trivial character of {}", text);
            } else {
                assert!(index < bound, "index bound for {}", text);
            }
        }

        // at most two codegrees exactly for elementary abelian groups
        let elem_ab = structure::elementary_abelian_rank(g).unwrap().is_some() || order == 1;
        assert_eq!(
            r.cod_set.len() <= 2,
            elem_ab,
            "codegree count vs elementary abelian for {}",
            text
        );

        // Fitting height bound for solvable groups
        if structure::is_solvable(g).unwrap() {
            let h = structure::fitting_height(g).unwrap();
            assert!(
                u64::from(h) <= (r.cod_set.len() as u64) - 1,
                "Fitting height bound for {}",
                text
            );
        }
    }

    // coprime direct products multiply codegree sets
    let coprime_pairs: &[(&str, &str)] = &[
        ("cyclic(4)", "cyclic(3)"),
        ("frobsinger(2,3,1)", "cyclic(5)"),
        ("cyclic(4)", "elemab(3,2)"),
        ("named(\"SL2of3\")", "cyclic(5)"),
        ("frobsinger(2,5,1)", "frobsinger(3,7,1)"),
    ];
    for (a, bspec) in coprime_pairs {
        let (_, ra) = report_of(a);
        let (_, rb) = report_of(bspec);
        let (_, rab) = report_of(&format!("dirprod({},{})", a, bspec));
        let mut products = BTreeSet::new();
        for x in &ra.cod_set {
            for y in &rb.cod_set {
                products.insert(x * y);
            }
        }
        let got: BTreeSet<u64> = rab.cod_set.iter().cloned().collect();
        assert_eq!(got, products, "product codegrees of {} x {}", a, bspec);
        assert_eq!(
            rab.cod_set.len(),
            ra.cod_set.len() * rb.cod_set.len(),
            "product codegree count of {} x {}",
            a,
            bspec
        );
    }

    // Frobenius groups with cyclic complement and homocyclic kernel:
    // characters whose kernel misses the kernel subgroup have codegrees
    // exactly {q^(k*d) : 1 <= k <= log_q exp(A)}
    let frob: &[(&str, u64)] = &[
        ("frobsinger(2,3,1)", 3),
        ("frobsinger(2,3,2)", 3),
        ("frobsinger(2,5,1)", 5),
        ("frobsinger(3,7,1)", 7),
        ("frobsinger(4,3,1)", 3),
        ("named(\"HomocyclicInv\",3,2,1)", 3),
    ];
    for (text, q) in frob {
        let (b, r) = report_of(text);
        let n = &b.meta["N"];
        let p = &b.meta["P"];
        let d = fq::mult_order(*q, p.order()).unwrap();
        let exp = n.exponent().unwrap();
        let mut log_q = 0u64;
        let mut acc = 1u64;
        while acc < exp {
            acc *= q;
            log_q += 1;
        }
        assert_eq!(acc, exp, "homocyclic exponent of {}", text);
        let want: BTreeSet<u64> = (1..=log_q).map(|k| q.pow((k * d) as u32)).collect();
        let mut got = BTreeSet::new();
        for (i, c) in r.per_char.iter().enumerate() {
            let (ker, _) = r.table.kernel_of_character(i).unwrap();
            if !ker.contains_group(n).unwrap() {
                got.insert(c.codegree);
            }
        }
        assert_eq!(got, want, "kernel-avoiding codegrees of {}", text);
    }

    println!(
        "criterion 3 (property suites over {} groups): PASS",
        specs.len()
    );
}

#[test]
fn criterion_4_complex_float_oracle() {
    let mut checked = 0usize;
    let mut pool: Vec<String> = SMALL_FIXTURES.iter().map(|s| s.to_string()).collect();
    pool.extend(
        catalog::load_catalog(&catalog_path())
            .unwrap()
            .iter()
            .map(|e| e.text.clone()),
    );
    pool.sort();
    pool.dedup();
    for text in &pool {
        let b = built(text);
        if b.group.order() > 60 {
            continue;
        }
        let r = chartab::codegree_report(&b.group).unwrap();
        let t = &r.table;
        let order = b.group.order();
        for i in 0..t.count() {
            let deg = t.degrees[i] as f64;
            // evaluate chi as a complex sum of roots of unity per class
            let mut oracle_kernel = Vec::new();
            for j in 0..t.classes.count() {
                let ms = &t.mults[i][j];
                let o = ms.len() as f64;
                let (mut re, mut im) = (0.0f64, 0.0f64);
                for (k, &m) in ms.iter().enumerate() {
                    let angle = 2.0 * std::f64::consts::PI * (k as f64) / o;
                    re += (m as f64) * angle.cos();
                    im += (m as f64) * angle.sin();
                }
                if (re - deg).abs() < 1e-6 && im.abs() < 1e-6 {
                    oracle_kernel.push(j);
                }
            }
            assert_eq!(
                oracle_kernel,
                t.kernel_classes(i),
                "kernel classes of character {} of {}",
                i,
                text
            );
            let ker_order: u64 = oracle_kernel.iter().map(|&j| t.classes.sizes[j]).sum();
            let index = order / ker_order;
            assert_eq!(index % t.degrees[i], 0, "codegree integrality of {}", text);
            assert_eq!(
                index / t.degrees[i],
                r.per_char[i].codegree,
                "oracle codegree of character {} of {}",
                i,
                text
            );
        }
        checked += 1;
    }
    assert!(checked >= 15, "criterion 4: FAIL — only {} groups of order <= 60", checked);
    println!(
        "criterion 4 (complex-float oracle over {} groups of order <= 60): PASS",
        checked
    );
}
