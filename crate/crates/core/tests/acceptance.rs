//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line (visible with `cargo test -- --nocapture`).

use std::collections::BTreeMap;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use wclones::classify::{classify, SharpClass};
use wclones::domain::FiniteDomain;
use wclones::enumerate::{enumerate_operations, sharp_ternary_by_pattern, sharp_ternary_classes};
use wclones::fixtures;
use wclones::gordan::{solve_gordan, verify_outcome, QMatrix};
use wclones::improve::{
    decompose_unary_sum, is_polymorphism, is_weighted_polymorphism, UnaryDecomposition,
};
use wclones::instance::{Constraint, VcspInstance};
use wclones::ops::{cyclic_variants, Operation};
use wclones::pipeline::{find_witness, PipelineCaps, WitnessCase};
use wclones::rational::{ratio, rational_from_int as q, ExtRational, Rational};
use wclones::relation::{Language, WeightedRelation};
use wclones::weighting::Weighting;
use wclones::wpol_search::core_reduce;

fn report(number: u32, name: &str, started: Instant, pass: bool, detail: &str) {
    println!(
        "criterion {number:02} ({name}): {} in {:?}{}",
        if pass { "PASS" } else { "FAIL" },
        started.elapsed(),
        if detail.is_empty() {
            String::new()
        } else {
            format!(" — {detail}")
        }
    );
}

fn class_label(c: SharpClass) -> &'static str {
    match c {
        SharpClass::Majority => "Mj",
        SharpClass::Semiprojection(1) => "S1",
        SharpClass::Semiprojection(2) => "S2",
        SharpClass::Semiprojection(3) => "S3",
        SharpClass::Pixley(1) => "P1",
        SharpClass::Pixley(2) => "P2",
        SharpClass::Pixley(3) => "P3",
        SharpClass::Minority => "Mn",
        _ => "??",
    }
}

/// Checks the taxonomy column identities directly on the three argument
/// patterns, independently of `classify`.
fn column_identities_hold(f: &Operation, class: SharpClass) -> bool {
    let d = f.domain();
    let takes_y = match class {
        SharpClass::Majority => [false, false, false],
        SharpClass::Semiprojection(1) => [false, false, true],
        SharpClass::Semiprojection(2) => [false, true, false],
        SharpClass::Semiprojection(3) => [true, false, false],
        SharpClass::Pixley(1) => [false, true, true],
        SharpClass::Pixley(2) => [true, false, true],
        SharpClass::Pixley(3) => [true, true, false],
        SharpClass::Minority => [true, true, true],
        _ => return false,
    };
    for x in d.labels() {
        for y in d.labels() {
            if x == y {
                continue;
            }
            let rows = [f.eval(&[x, x, y]), f.eval(&[x, y, x]), f.eval(&[y, x, x])];
            for (got, &want_y) in rows.iter().zip(&takes_y) {
                if *got != if want_y { y } else { x } {
                    return false;
                }
            }
        }
    }
    true
}

#[test]
fn criterion_01_sharp_ternary_census() {
    let started = Instant::now();
    let d = FiniteDomain::new(2).unwrap();
    let mut counts: BTreeMap<SharpClass, usize> = BTreeMap::new();
    let mut identities_ok = true;
    for op in enumerate_operations(d, 3, None, None).unwrap() {
        let op = op.unwrap();
        let c = classify(&op);
        if c.sharp {
            let class = c
                .sharp_class
                .expect("sharp ternary operations are classified");
            *counts.entry(class).or_insert(0) += 1;
            identities_ok &= column_identities_hold(&op, class);
        }
    }
    let detail: Vec<String> = sharp_ternary_classes()
        .iter()
        .map(|c| {
            format!(
                "{}:{}",
                class_label(*c),
                counts.get(c).copied().unwrap_or(0)
            )
        })
        .collect();
    let pass = identities_ok
        && sharp_ternary_classes()
            .iter()
            .all(|c| counts.get(c).copied().unwrap_or(0) == 1);
    report(
        1,
        "exactly 8 sharp ternary operations at |D|=2, one per column",
        started,
        pass,
        &detail.join(" "),
    );
    assert!(started.elapsed().as_secs() < 1, "runtime budget exceeded");
    assert!(
        pass,
        "expected one sharp operation per column, found {}; on a two-element domain \
         the three semiprojection column patterns coincide with the projections \
         e_1, e_2, e_3, which are not sharp, so only five sharp ternary operations exist",
        detail.join(" ")
    );
}

#[test]
fn criterion_02_cyclic_transition_law() {
    let started = Instant::now();
    let mut checked = 0usize;
    let mut pass = true;
    for size in [2usize, 3] {
        let d = FiniteDomain::new(size).unwrap();
        for class in sharp_ternary_classes() {
            for op in sharp_ternary_by_pattern(d, class) {
                let variants = cyclic_variants(&op);
                for (r, variant) in variants.iter().enumerate() {
                    let expected = class.cyclic_shift(r);
                    let got = classify(variant).sharp_class;
                    if got != Some(expected) {
                        pass = false;
                    }
                    checked += 1;
                }
            }
        }
    }
    // 5 sharp operations at |D|=2 and 5829 at |D|=3, three variants each
    let enough = checked >= 3 * (5 + 1000);
    report(
        2,
        "cyclic permutation transitions of sharp classes",
        started,
        pass && enough,
        &format!("{checked} transitions checked"),
    );
    assert!(started.elapsed().as_secs() < 10, "runtime budget exceeded");
    assert!(pass && enough);
}

#[test]
fn criterion_03_quaternary_sharp_are_semiprojections() {
    let started = Instant::now();
    let d = FiniteDomain::new(2).unwrap();
    let mut total = 0usize;
    let mut sharp_count = 0usize;
    let mut exceptions = 0usize;
    for op in enumerate_operations(d, 4, None, None).unwrap() {
        let op = op.unwrap();
        total += 1;
        let c = classify(&op);
        if c.sharp {
            sharp_count += 1;
            if !matches!(c.sharp_class, Some(SharpClass::Semiprojection(_))) {
                exceptions += 1;
            }
        }
    }
    let pass = total == 65_536 && exceptions == 0;
    report(
        3,
        "every sharp quaternary Boolean operation is a semiprojection",
        started,
        pass,
        &format!("{total} operations, {sharp_count} sharp, {exceptions} exceptions"),
    );
    assert!(started.elapsed().as_secs() < 30, "runtime budget exceeded");
    assert!(pass);
}

#[test]
fn criterion_04_worked_examples() {
    let started = Instant::now();

    // (a) the three-element weighting improves the gadget relation
    let improvement = is_weighted_polymorphism(
        &fixtures::split_min_weighting(),
        &fixtures::maxcut_gadget_relation(),
        None,
    )
    .unwrap()
    .improves();

    // (b) argmin of the gadget relation
    let inst = VcspInstance::new(
        fixtures::three_domain(),
        2,
        vec![Constraint {
            relation: fixtures::maxcut_gadget_relation(),
            scope: vec![0, 1],
        }],
    )
    .unwrap();
    let res = inst.solve_bruteforce(None, None).unwrap();
    let argmin_ok =
        res.optimum == ExtRational::zero() && res.argmin == vec![vec![0, 1], vec![1, 0]];

    // (c) rectangular band identities over all 64 triples
    let band = fixtures::rectangular_band_op().unwrap();
    let bd = band.domain();
    let mut band_ok = band.is_idempotent() && !band.is_projection();
    for x in bd.labels() {
        for y in bd.labels() {
            for z in bd.labels() {
                let assoc =
                    band.eval(&[band.eval(&[x, y]), z]) == band.eval(&[x, band.eval(&[y, z])]);
                let rect = band.eval(&[x, band.eval(&[y, z])]) == band.eval(&[x, z]);
                band_ok &= assoc && rect;
            }
        }
    }

    // (d) every ternary semiprojection on {0,1,2} preserves the
    // not-all-equal relation
    let nae = fixtures::nae_relation();
    let mut semis = 0usize;
    let mut all_preserve = true;
    for t in 1..=3 {
        for op in sharp_ternary_by_pattern(fixtures::three_domain(), SharpClass::Semiprojection(t))
        {
            semis += 1;
            all_preserve &= is_polymorphism(&op, &nae).unwrap().holds();
        }
    }
    let census_ok = semis == 3 * 728 && all_preserve;

    let pass = improvement && argmin_ok && band_ok && census_ok;
    report(
        4,
        "worked examples: improvement, argmin, band identities, semiprojection census",
        started,
        pass,
        &format!(
            "improvement {improvement}, argmin {argmin_ok}, band {band_ok}, \
             {semis} semiprojections preserve the relation: {all_preserve}"
        ),
    );
    assert!(started.elapsed().as_secs() < 20, "runtime budget exceeded");
    assert!(pass);
}

fn random_positive_weighting(rng: &mut StdRng) -> Weighting {
    let size = rng.gen_range(2..=3usize);
    let arity = rng.gen_range(1..=3usize);
    let d = FiniteDomain::new(size).unwrap();
    let table_len = d.tuple_count(arity).unwrap();
    let support_size = rng.gen_range(1..=6usize);
    let mut entries: Vec<(Operation, Rational)> = Vec::new();
    let mut total = Rational::from_integer(0.into());
    let mut found = 0usize;
    while found < support_size {
        let table: Vec<usize> = (0..table_len).map(|_| rng.gen_range(0..size)).collect();
        let op = Operation::new(d, arity, table).unwrap();
        if op.is_projection() {
            continue;
        }
        let w = ratio(rng.gen_range(1..=6), rng.gen_range(1..=3));
        total += &w;
        entries.push((op, w));
        found += 1;
    }
    // split the balancing negative weight over the projections
    let mut shares: Vec<Rational> = (0..arity).map(|_| ratio(rng.gen_range(0..=4), 1)).collect();
    let share_total: Rational = shares.iter().sum();
    if share_total == Rational::from_integer(0.into()) {
        shares[0] = ratio(1, 1);
    }
    let share_total: Rational = shares.iter().sum();
    for (i, share) in shares.iter().enumerate() {
        let e = Operation::projection(d, arity, i + 1).unwrap();
        entries.push((e, -(&total * share / &share_total)));
    }
    let w = Weighting::new(d, arity, entries).unwrap();
    assert!(w.is_valid() && w.is_positive());
    w
}

#[test]
fn criterion_05_symmetrization_properties() {
    let started = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5ca1ab1e);
    let mut pass = true;
    for _ in 0..200 {
        let w = random_positive_weighting(&mut rng);
        let mu = w.symmetrize().unwrap();
        let d = w.domain();
        let k = w.arity();
        for i in 1..=k {
            let e = Operation::projection(d, k, i).unwrap();
            pass &= mu.weight(&e) == q(-1);
        }
        // cyclic invariance of every weight
        for (op, weight) in mu.entries() {
            for variant in cyclic_variants(op) {
                pass &= mu.weight(&variant) == *weight;
            }
        }
        // non-projection support is the cyclic closure of the input's
        let mut expected: Vec<Operation> = Vec::new();
        for op in w.support() {
            if op.is_projection() {
                continue;
            }
            for variant in cyclic_variants(op) {
                expected.push(variant);
            }
        }
        expected.sort();
        expected.dedup();
        let mut got: Vec<Operation> = mu
            .support()
            .filter(|op| !op.is_projection())
            .cloned()
            .collect();
        got.sort();
        pass &= got == expected;
    }
    report(
        5,
        "symmetrization normal form on 200 random positive weightings",
        started,
        pass,
        "",
    );
    assert!(pass);
}

#[test]
fn criterion_06_gordan_dichotomy_on_random_matrices() {
    let started = Instant::now();
    let mut rng = StdRng::seed_from_u64(0xd1ce);
    let mut kernels = 0usize;
    let mut duals = 0usize;
    let mut pass = true;
    for _ in 0..500 {
        let rows = rng.gen_range(1..=6usize);
        let cols = rng.gen_range(1..=8usize);
        let data: Vec<Vec<Rational>> = (0..rows)
            .map(|_| {
                (0..cols)
                    .map(|_| {
                        let den = rng.gen_range(1..=4i64);
                        let num = rng.gen_range(-3 * den..=3 * den);
                        ratio(num, den)
                    })
                    .collect()
            })
            .collect();
        let m = QMatrix::new(data).unwrap();
        let first = solve_gordan(&m);
        let second = solve_gordan(&m);
        pass &= first == second;
        pass &= verify_outcome(&m, &first);
        match first {
            wclones::gordan::GordanOutcome::Kernel(_) => kernels += 1,
            wclones::gordan::GordanOutcome::Dual(_) => duals += 1,
        }
    }
    report(
        6,
        "verified deterministic Gordan outcomes on 500 random matrices",
        started,
        pass,
        &format!("{kernels} kernels, {duals} duals"),
    );
    assert!(pass);
}

struct PipelineFixture {
    name: &'static str,
    generator: Weighting,
    expected: WitnessCase,
}

fn pipeline_fixtures() -> Vec<PipelineFixture> {
    let d4 = FiniteDomain::new(4).unwrap();
    let quaternary = fixtures::quaternary_semiprojection().unwrap();
    let quaternary_weighting = Weighting::new(
        d4,
        4,
        (1..=4)
            .map(|i| (Operation::projection(d4, 4, i).unwrap(), q(-1)))
            .chain([(quaternary, q(4))]),
    )
    .unwrap();
    vec![
        PipelineFixture {
            name: "all-Pixley triple",
            generator: fixtures::related_triple_weighting(&fixtures::pixley_type1_on_three())
                .unwrap(),
            expected: WitnessCase::MajorityOnly,
        },
        PipelineFixture {
            name: "majority-heavy mix",
            generator: fixtures::majority_minority_weighting(ratio(5, 2), ratio(1, 2)),
            expected: WitnessCase::MajorityOnly,
        },
        PipelineFixture {
            name: "balanced 2:1 mix",
            generator: fixtures::majority_minority_weighting(q(2), q(1)),
            expected: WitnessCase::MajMin21,
        },
        PipelineFixture {
            name: "ternary semiprojection triple",
            generator: fixtures::related_triple_weighting(
                &fixtures::semiprojection_type1_on_three(),
            )
            .unwrap(),
            expected: WitnessCase::Semiprojections(3),
        },
        PipelineFixture {
            name: "quaternary semiprojection",
            generator: quaternary_weighting,
            expected: WitnessCase::Semiprojections(4),
        },
        PipelineFixture {
            name: "submodularity weighting",
            generator: fixtures::submodular_weighting(),
            expected: WitnessCase::BinaryIdempotent,
        },
    ]
}

fn eliminated_classes_are_zero(witness: &Weighting, case: WitnessCase) -> bool {
    // every nonzero entry must be a projection or carry the class the case
    // demands, so all eliminated classes hold weight exactly zero
    witness.entries().all(|(op, _)| {
        let c = classify(op);
        if c.projection.is_some() {
            return true;
        }
        match case {
            WitnessCase::BinaryIdempotent => c.idempotent,
            WitnessCase::MajorityOnly => c.is_majority(),
            WitnessCase::MinorityOnly => c.is_minority(),
            WitnessCase::MajMin21 => c.is_majority() || c.is_minority(),
            WitnessCase::Semiprojections(_) => c.is_semiprojection(),
        }
    })
}

#[test]
fn criterion_07_pipeline_end_to_end() {
    let started = Instant::now();
    let mut pass = true;
    let mut lines: Vec<String> = Vec::new();
    for fixture in pipeline_fixtures() {
        let report = find_witness(
            std::slice::from_ref(&fixture.generator),
            &PipelineCaps::default(),
        )
        .unwrap();
        let case_ok = report.case == fixture.expected;
        let replay_ok = report
            .certificate
            .replay_matches(&report.witness)
            .unwrap_or(false);
        let zero_ok = eliminated_classes_are_zero(&report.witness, report.case);
        let totals_ok = if report.case == WitnessCase::MajMin21 {
            let mut majority = Rational::from_integer(0.into());
            let mut minority = Rational::from_integer(0.into());
            for op in report.witness.support() {
                let c = classify(op);
                if c.is_majority() {
                    majority += report.witness.weight(op);
                } else if c.is_minority() {
                    minority += report.witness.weight(op);
                }
            }
            majority == q(2) && minority == q(1)
        } else {
            true
        };
        let ok = case_ok && replay_ok && zero_ok && totals_ok;
        pass &= ok;
        lines.push(format!(
            "{}: {:?} {}",
            fixture.name,
            report.case,
            if ok { "ok" } else { "MISMATCH" }
        ));
    }
    report(
        7,
        "six pipeline fixtures with replayable certificates",
        started,
        pass,
        &lines.join("; "),
    );
    assert!(started.elapsed().as_secs() < 60, "runtime budget exceeded");
    assert!(pass);
}

#[test]
fn criterion_08_majority_heavy_witness_values() {
    let started = Instant::now();
    let generator = fixtures::majority_minority_weighting(ratio(5, 2), ratio(1, 2));
    let report_ = find_witness(&[generator], &PipelineCaps::default()).unwrap();
    let w = &report_.witness;
    let d = fixtures::boolean_domain();
    let e = |i| Operation::projection(d, 3, i).unwrap();
    let pass = report_.case == WitnessCase::MajorityOnly
        && w.weight(&e(1)) == ratio(-1, 2)
        && w.weight(&e(2)) == q(-1)
        && w.weight(&e(3)) == q(-1)
        && w.weight(&fixtures::boolean_majority()) == ratio(5, 2)
        && w.weight(&fixtures::boolean_minority()) == q(0);
    report(
        8,
        "majority-heavy rebalance reaches the exact worked weights",
        started,
        pass,
        &format!("witness {w:?}"),
    );
    assert!(pass);
}

/// All Boolean binary weighted relations with values drawn from the given
/// menu.
fn boolean_binary_relations(menu: &[ExtRational]) -> Vec<WeightedRelation> {
    let d = FiniteDomain::new(2).unwrap();
    let mut out = Vec::new();
    let n = menu.len();
    for code in 0..n.pow(4) {
        let mut c = code;
        let mut values = Vec::with_capacity(4);
        for _ in 0..4 {
            values.push(menu[c % n].clone());
            c /= n;
        }
        out.push(WeightedRelation::new(d, 2, values).unwrap());
    }
    out
}

fn constant_on_domain(phi: &WeightedRelation) -> bool {
    let finite: Vec<&Rational> = phi
        .values()
        .iter()
        .filter_map(ExtRational::as_finite)
        .collect();
    finite.windows(2).all(|w| w[0] == w[1])
}

#[test]
fn criterion_09_crisp_improvements() {
    let started = Instant::now();
    let menu = [
        ExtRational::from_int(0),
        ExtRational::from_int(1),
        ExtRational::from_int(2),
        ExtRational::Infinite,
    ];
    let majority_only = fixtures::majority_minority_weighting(q(3), q(0));
    let minority_only = fixtures::majority_minority_weighting(q(0), q(3));
    let mut improved = 0usize;
    let mut exceptions = 0usize;
    for phi in boolean_binary_relations(&menu) {
        for w in [&majority_only, &minority_only] {
            if is_weighted_polymorphism(w, &phi, None).unwrap().improves() {
                improved += 1;
                if !constant_on_domain(&phi) {
                    exceptions += 1;
                }
            }
        }
    }
    let pass = exceptions == 0 && improved > 0;
    report(
        9,
        "majority-only and minority-only improvements are constant on their domain",
        started,
        pass,
        &format!("{improved} improved relations, {exceptions} non-constant"),
    );
    assert!(started.elapsed().as_secs() < 30, "runtime budget exceeded");
    assert!(pass);
}

#[test]
fn criterion_10_core_reduction() {
    let started = Instant::now();
    let lang = Language::new(
        fixtures::three_domain(),
        [("phi".to_owned(), fixtures::unary_core_fixture())],
    )
    .unwrap();
    let reduction = core_reduce(&lang).unwrap();
    let domain_ok = reduction.domain.size() == 2;

    // random instances over the fixture language keep their optima
    let mut rng = StdRng::seed_from_u64(0xc0de);
    let mut optima_ok = true;
    for _ in 0..50 {
        let n = rng.gen_range(1..=6usize);
        let m = rng.gen_range(1..=8usize);
        let scopes: Vec<Vec<usize>> = (0..m).map(|_| vec![rng.gen_range(0..n)]).collect();
        let original = VcspInstance::new(
            fixtures::three_domain(),
            n,
            scopes
                .iter()
                .map(|s| Constraint {
                    relation: fixtures::unary_core_fixture(),
                    scope: s.clone(),
                })
                .collect(),
        )
        .unwrap();
        let reduced = VcspInstance::new(
            reduction.domain,
            n,
            scopes
                .iter()
                .map(|s| Constraint {
                    relation: reduction.language.get("phi").unwrap().clone(),
                    scope: s.clone(),
                })
                .collect(),
        )
        .unwrap();
        let a = original.solve_bruteforce(None, Some(1)).unwrap().optimum;
        let b = reduced.solve_bruteforce(None, Some(1)).unwrap().optimum;
        optima_ok &= a == b;
    }
    let pass = domain_ok && optima_ok;
    report(
        10,
        "core reduction shrinks the fixture language and preserves optima",
        started,
        pass,
        &format!(
            "domain {} labels after {} steps",
            reduction.domain.size(),
            reduction.chain.len()
        ),
    );
    assert!(pass);
}

/// Independent oracle: the rectangle equality checked by brute force.
fn rectangle_equality_holds(phi: &WeightedRelation) -> bool {
    let d = phi.domain();
    let m = phi.arity();
    let finite = |t: &[usize]| phi.value(t).as_finite().unwrap().clone();
    for x in d.tuples(m) {
        for y in d.tuples(m) {
            for i in 0..m {
                let mut xi = x.clone();
                xi[i] = y[i];
                let mut yi = y.clone();
                yi[i] = x[i];
                if finite(&x) + finite(&y) != finite(&xi) + finite(&yi) {
                    return false;
                }
            }
        }
    }
    true
}

#[test]
fn criterion_11_unary_decomposition() {
    let started = Instant::now();
    let menu = [
        ExtRational::from_int(0),
        ExtRational::from_int(1),
        ExtRational::from_int(2),
        ExtRational::from_int(3),
    ];
    let mut decomposed = 0usize;
    let mut pass = true;
    for phi in boolean_binary_relations(&menu) {
        let expected = rectangle_equality_holds(&phi);
        match decompose_unary_sum(&phi).unwrap() {
            UnaryDecomposition::Parts(parts) => {
                pass &= expected;
                decomposed += 1;
                for x in phi.domain().tuples(2) {
                    let total: Rational = parts
                        .iter()
                        .zip(&x)
                        .map(|(p, &xi)| p.value(&[xi]).as_finite().unwrap().clone())
                        .sum();
                    pass &= ExtRational::Finite(total) == *phi.value(&x);
                }
            }
            UnaryDecomposition::Fails { .. } => pass &= !expected,
        }
    }
    let pass = pass && decomposed > 0;
    report(
        11,
        "unary decomposition succeeds exactly on rectangle-equal relations",
        started,
        pass,
        &format!("{decomposed} of 256 relations decomposed"),
    );
    assert!(pass);
}
