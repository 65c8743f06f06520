//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion.
//!
//! Set `QBOREL_SWEEP_D4=1` to add D4 to the graded sweep.

use std::process::ExitCode;
use std::time::Instant;

use qborel::coideal::{
    build_presentation, character_shift, conj_a_predict, conj_a_sweep, lambda_prime, prop_shift_check, quantum_weyl_identity,
    shift_minus, sl2_borel, sl3_type1_borel, sl3_type2_borel, Character, CoidealPresentation, PropShiftOutcome, SchubertPart,
    ShiftSign, Sl3Relation, Sl3RelationCheck, TriangularData,
};
use qborel::qfield::{qbinom, RatFunc};
use qborel::repthy::{
    induced_sl2, nonbasic_witness, quotient_character_search, restrict_and_factor, simple_module, sl2_quotient_hom,
    sl2_simple, sl2_submodule_oracle, sl2_submodule_test, InducedSpec, Sign, WitnessOutcome, WitnessSource, DEFAULT_DIM_CAP,
};
use qborel::rootsys::{height, LatVec};
use qborel::uqalg::{AlgElt, Direction, Side, Uq, DEFAULT_BOUND};

type Check = Result<String, String>;

fn uq(name: &str) -> Uq {
    Uq::new(name.parse().expect("known datum"), DEFAULT_BOUND)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn quantum_weyl() -> Check {
    let start = Instant::now();
    let (lhs, rhs) = quantum_weyl_identity(&uq("A1")).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(lhs == rhs, || format!("[Ē,F̄]_q² = {lhs}, expected {rhs}"))?;
    ensure(elapsed.as_secs_f64() < 1.0, || format!("took {elapsed:?}"))?;
    Ok(format!("[Ē,F̄]_q² = {rhs} in {elapsed:?}"))
}

/// The stated K-centrality and outer-pair relations fail; everything else holds.
fn sl3_catalog() -> (Check, bool) {
    let checks = match Sl3RelationCheck::all(&uq("A2")) {
        Ok(c) => c,
        Err(e) => return (Err(e.to_string()), false),
    };
    let failing: Vec<Sl3Relation> = checks.iter().filter(|c| !c.holds).map(|c| c.relation).collect();
    let documented = failing == [Sl3Relation::KCommutesWithOuter, Sl3Relation::OuterPair];
    if failing.is_empty() {
        return (Ok(format!("{} relations hold", checks.len())), true);
    }
    let names: Vec<&str> = checks.iter().filter(|c| !c.holds).map(|c| c.label.as_str()).collect();
    let corrected = checks.iter().filter(|c| !c.stated).all(|c| c.holds);
    let reason = format!(
        "stated relations fail: {}; corrected variants hold: {corrected}",
        names.join(", ")
    );
    (Err(reason), documented && corrected)
}

fn sweep_conj_a() -> Check {
    let mut names = vec!["A2", "A3", "G2", "C3", "B3"];
    if std::env::var("QBOREL_SWEEP_D4").is_ok_and(|v| v == "1") {
        names.push("D4");
    }
    let mut summary = Vec::new();
    for name in names {
        let u = uq(name);
        let start = Instant::now();
        let reports = conj_a_sweep(&u, 4, &|_| {}).map_err(|e| format!("{name}: {e}"))?;
        for r in &reports {
            let predicted = conj_a_predict(u.datum(), &r.w, &r.support);
            let detected = r.detected.as_ref().ok_or_else(|| format!("{name} {} {}: {:?}", r.w, r.support, r.verdict))?;
            ensure(r.is_confirmed() && *detected == predicted, || format!("{name} {} {}: detected {detected}", r.w, r.support))?;
            ensure(r.w.len() == r.group_rank + detected.len(), || format!("{name} {} {}: length identity", r.w, r.support))?;
        }
        let group = u.datum().weyl_group().len();
        summary.push(format!("{name}: |W| = {group}, {} cases in {:.1?}", reports.len(), start.elapsed()));
    }
    Ok(summary.join("; "))
}

fn a3_expansions() -> Check {
    let u = uq("A3");
    let datum = u.datum();
    let w = datum.from_reduced_word(&[2, 0, 1, 0]).map_err(|e| e.to_string())?;
    let (a, b) = (RatFunc::from_int(2), RatFunc::from_int(3));
    let phi = Character::new(datum, &w, &[(0, a.clone()), (2, b.clone())]).map_err(|e| e.to_string())?;
    let q = RatFunc::q_pow;
    let low = &q(-1) - &q(1);
    let mul = |x: &AlgElt, y: &AlgElt| u.mul(x, y).expect("product");
    let br = |i: usize, j: usize| u.qcomm(&u.f(i), &u.f(j), &q(1)).expect("commutator");
    let k = |v: &[i32]| u.k(v);
    let f123 = u.root_vector(w.word(), 2, Side::F).map_err(|e| e.to_string())?;
    let f23 = u.root_vector(w.word(), 3, Side::F).map_err(|e| e.to_string())?;

    let f23_bar = character_shift(&u, &f23, &w, &phi).map_err(|e| e.to_string())?;
    let f23_display = &br(2, 1) + &mul(&u.f(1), &k(&[0, 0, -1])).scale(&(&b * &low));
    ensure(f23_bar == f23_display, || format!("F̄23 = {f23_bar}"))?;

    let f123_bar = shift_minus(&u, &f123, &phi).map_err(|e| e.to_string())?;
    let f123_display = u.lin(&[
        (RatFunc::one(), &u.qcomm(&u.f(0), &br(2, 1), &q(1)).expect("commutator")),
        (&a * &low, &mul(&br(2, 1), &k(&[-1, 0, 0]))),
        (&b * &low, &mul(&br(0, 1), &k(&[0, 0, -1]))),
        (&(&a * &b) * &(&low * &low), &mul(&u.f(1), &k(&[-1, 0, -1]))),
    ]);
    ensure(f123_bar == f123_display, || format!("F̄123 = {f123_bar}"))?;

    let target = &f123 + &mul(&br(0, 1), &k(&[0, 0, -1])).scale(&(&b * &low));
    let correction = mul(&f23_bar, &k(&[-1, 0, 0])).scale(&(&a * &(&q(1) - &q(-1))));
    let plus = &f123_bar + &correction;
    let minus = &f123_bar - &correction;
    ensure(plus == target, || format!("cancellation gives {plus}"))?;
    Ok(format!("F̄23, F̄123 match; cancellation needs +φ(F1)(q−q⁻¹) (literal minus sign cancels: {})", minus == target))
}

fn prop_shift() -> Check {
    let mut counts = Vec::new();
    for name in ["A3", "B3"] {
        let u = uq(name);
        let datum = u.datum();
        let value = RatFunc::from_int(2);
        let (mut applicable, mut lowering, mut raising) = (0, 0, 0);
        for v in datum.weyl_group() {
            for i in 0..datum.rank() {
                for m in 0..datum.rank() {
                    match prop_shift_check(&u, &v, i, m, &value).map_err(|e| e.to_string())? {
                        PropShiftOutcome::NotApplicable(_) => {}
                        out => {
                            applicable += 1;
                            lowering += usize::from(out.holds(ShiftSign::Lowering) == Some(true));
                            raising += usize::from(out.holds(ShiftSign::Raising) == Some(true));
                        }
                    }
                }
            }
        }
        ensure(applicable > 0 && lowering == applicable, || format!("{name}: {lowering}/{applicable} triples"))?;
        counts.push(format!("{name}: {applicable} triples, (q_m⁻¹−q_m) sign holds on all, (q_m−q_m⁻¹) on {raising}"));
    }
    Ok(counts.join("; "))
}

fn pbw_dimensions() -> Check {
    let mut summary = Vec::new();
    for name in ["A2", "A3", "B3", "C3"] {
        let u = uq(name);
        let mut count = 0;
        for nu in u.datum().vectors_below(&vec![8; u.rank()]) {
            if height(&nu) > 8 {
                continue;
            }
            let basis = u.degree_basis(&nu).map_err(|e| e.to_string())?;
            let expected = u.datum().kostant_dim(&nu);
            ensure(basis.dim() as u64 == expected, || format!("{name} {nu:?}: {} vs {expected}", basis.dim()))?;
            count += 1;
        }
        summary.push(format!("{name}: {count} degrees"));
    }
    Ok(summary.join(", "))
}

fn sl2_induced_structure() -> Check {
    let u = uq("A1");
    let lambda = RatFunc::one();
    for n in 0..=3u32 {
        for sign in [Sign::Plus, Sign::Minus] {
            let e = RatFunc::from_int(sign.value()).mul_q_pow(n as i32);
            let spec = InducedSpec::with_e(e, 8);
            let oracle = sl2_submodule_oracle(&u, &spec, 8).map_err(|e| e.to_string())?;
            ensure(oracle == Some((n, sign)), || format!("n = {n} {sign}: oracle {oracle:?}"))?;
            ensure(sl2_submodule_test(&spec.e, &lambda) == Some((n, sign)), || format!("n = {n} {sign}: test"))?;
            let module = induced_sl2(&u, &spec).map_err(|e| e.to_string())?;
            let hom = sl2_quotient_hom(&module, &spec).map_err(|e| e.to_string())?;
            let codim = module.labels.len() - hom.kernel_dim();
            ensure(codim == n as usize + 1 && hom.intertwines(), || format!("n = {n} {sign}: codimension {codim}"))?;
        }
    }
    for e in ["2", "q^-1", "q+1", "-3q^2", "q^2+q^-2"] {
        let spec = InducedSpec::with_e(e.parse().map_err(|_| format!("bad {e}"))?, 8);
        let oracle = sl2_submodule_oracle(&u, &spec, 8).map_err(|e| e.to_string())?;
        ensure(oracle.is_none() && sl2_submodule_test(&spec.e, &lambda).is_none(), || format!("e = {e}: {oracle:?}"))?;
    }
    Ok("8 reducible characters agree with codimension n+1; 5 generic characters irreducible up to n = 8".into())
}

fn quotient_existence() -> Check {
    let u = uq("A1");
    let borel = sl2_borel(&u, &RatFunc::one(), &lambda_prime()).map_err(|e| e.to_string())?;
    let mut inconsistent = 0;
    for n in 0..=3u32 {
        for sign in [Sign::Plus, Sign::Minus] {
            let found = quotient_character_search(&sl2_simple(n, sign), &borel).map_err(|e| e.to_string())?;
            ensure(found.len() == 1, || format!("L({n},{sign}): {} characters", found.len()))?;
            let (f, e) = (found[0][0].1.clone(), found[0][1].1.clone());
            let spec = InducedSpec::with_e(e, 6);
            ensure(spec.f == f, || format!("L({n},{sign}): χ(F̄) = {f}, expected {}", spec.f))?;
            let module = induced_sl2(&u, &spec).map_err(|e| e.to_string())?;
            match sl2_quotient_hom(&module, &spec) {
                Ok(hom) => ensure(hom.n == n && hom.sign == sign && hom.is_surjective() && hom.intertwines(), || {
                    format!("L({n},{sign}): map fails {:?}", hom.failures)
                })?,
                Err(qborel::repthy::RepError::RecurrenceInconsistent(_)) => inconsistent += 1,
                Err(e) => return Err(e.to_string()),
            }
        }
    }
    ensure(inconsistent == 0, || format!("{inconsistent} inconsistent recurrences"))?;
    Ok("8 simples, unique character each, surjections verified, 0 inconsistencies".into())
}

fn triangular(u: &Uq, minus: &[usize], lattice: Vec<LatVec>, plus: &[usize]) -> Result<CoidealPresentation, String> {
    let datum = u.datum();
    let w_minus = datum.from_reduced_word(minus).map_err(|e| e.to_string())?;
    let w_plus = datum.from_reduced_word(plus).map_err(|e| e.to_string())?;
    build_presentation(
        u,
        TriangularData {
            phi_minus: Character::new(datum, &w_minus, &[]).map_err(|e| e.to_string())?,
            phi_plus: Character::new(datum, &w_plus, &[]).map_err(|e| e.to_string())?,
            w_minus,
            lattice,
            w_plus,
        },
    )
    .map_err(|e| e.to_string())
}

fn basicness_battery() -> Check {
    let a2 = uq("A2");
    let datum = a2.datum();
    let weights: Vec<LatVec> = vec![vec![1, 0], vec![0, 1], vec![1, 1]];
    let modules = weights.iter().map(|w| simple_module(&a2, w, DEFAULT_DIM_CAP)).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
    let lattices: Vec<Vec<LatVec>> =
        vec![vec![vec![1, 0], vec![0, 1]], vec![vec![1, 0]], vec![vec![0, 1]], vec![vec![1, 1]], vec![vec![1, -1]]];
    let mut homogeneous = 0;
    for w in datum.weyl_group() {
        let roots = datum.phi_plus(&w);
        for lattice in &lattices {
            if !roots.iter().all(|r| lattice.iter().any(|mu| datum.form(r, mu) != 0)) {
                continue;
            }
            let c = triangular(&a2, w.word(), lattice.clone(), &[])?;
            for (weight, module) in weights.iter().zip(&modules) {
                let report = restrict_and_factor(module, &c).map_err(|e| e.to_string())?;
                ensure(report.all_one_dimensional(), || format!("k{lattice:?}U⁻[{w}] on L({weight:?}): {:?}", report.outcome))?;
            }
            homogeneous += 1;
        }
    }

    let a1 = uq("A1");
    let whole = triangular(&a1, &[0], vec![vec![1]], &[0])?;
    let found = nonbasic_witness(&a1, &whole, &[vec![1]], DEFAULT_DIM_CAP).map_err(|e| e.to_string())?;
    ensure(matches!(&found, WitnessOutcome::Found(w) if matches!(w.source, WitnessSource::SharedRoot { .. })), || {
        format!("U_q(sl2): {found:?}")
    })?;
    let off = sl2_borel(&a1, &RatFunc::one(), &RatFunc::from_int(2)).map_err(|e| e.to_string())?;
    let found = nonbasic_witness(&a1, &off, &[vec![1]], DEFAULT_DIM_CAP).map_err(|e| e.to_string())?;
    ensure(found.is_found(), || format!("off-constraint B_λ,λ′: {found:?}"))?;

    let standard = triangular(&a2, &[], vec![vec![1, 0], vec![0, 1]], &[0, 1, 0])?;
    let borels = [
        ("standard", standard),
        ("type 1", sl3_type1_borel(&a2).map_err(|e| e.to_string())?),
        ("type 2", sl3_type2_borel(&a2).map_err(|e| e.to_string())?),
    ];
    for (name, c) in &borels {
        let out = nonbasic_witness(&a2, c, &weights, DEFAULT_DIM_CAP).map_err(|e| e.to_string())?;
        ensure(!out.is_found(), || format!("{name} Borel: {out:?}"))?;
    }
    Ok(format!("{homogeneous} homogeneous algebras basic on 3 modules; witnesses for U_q(sl2) and off-constraint B; none for 3 sl3 Borels"))
}

fn generators(u: &Uq) -> Vec<AlgElt> {
    (0..u.rank()).flat_map(|i| [u.e(i), u.f(i), u.k_simple(i, 1), u.k_simple(i, -1)]).collect()
}

/// Defining relations evaluated on candidate images of the generators.
fn relation_failures(u: &Uq, e: &[AlgElt], f: &[AlgElt], k: &[AlgElt], k_inv: &[AlgElt]) -> Vec<String> {
    let datum = u.datum();
    let mul = |x: &AlgElt, y: &AlgElt| u.mul(x, y).expect("product");
    let mut bad = Vec::new();
    for i in 0..u.rank() {
        if mul(&k[i], &k_inv[i]) != u.one() {
            bad.push(format!("K{i}K{i}^-1"));
        }
        for j in 0..u.rank() {
            let a = RatFunc::q_pow(datum.form_simple(i, j));
            if mul(&mul(&k[i], &e[j]), &k_inv[i]) != e[j].scale(&a) {
                bad.push(format!("K{i}E{j}"));
            }
            let comm = &mul(&e[i], &f[j]) - &mul(&f[j], &e[i]);
            let expected = if i == j {
                let qi = u.q_i(i);
                (&k[i] - &k_inv[i]).scale(&(&qi - &qi.inv().expect("nonzero")).inv().expect("generic q"))
            } else {
                AlgElt::zero()
            };
            if comm != expected {
                bad.push(format!("[E{i},F{j}]"));
            }
            if i != j {
                let order = (1 - datum.cartan(i, j)) as u32;
                for (side, xs) in [("E", e), ("F", f)] {
                    let mut serre = AlgElt::zero();
                    for r in 0..=order {
                        let coeff = qbinom(order, r, datum.sym(i) as u32);
                        let coeff = if r % 2 == 1 { -&coeff } else { coeff };
                        let term = u.mul_all(&[&u.pow(&xs[i], order - r).expect("power"), &xs[j], &u.pow(&xs[i], r).expect("power")]).expect("product");
                        serre.add_scaled(&term, &coeff);
                    }
                    if !serre.is_zero() {
                        bad.push(format!("Serre {side}{i}{j}"));
                    }
                }
            }
        }
    }
    bad
}

fn hopf_and_automorphisms() -> Check {
    let u = uq("A2");
    let mut samples = generators(&u);
    samples.push(u.mul(&u.e(0), &u.f(1)).map_err(|e| e.to_string())?);
    samples.push(u.mul_all(&[&u.f(1), &u.k_simple(0, 1), &u.e(0), &u.e(1)]).map_err(|e| e.to_string())?);
    for x in &samples {
        let ok = u.antipode_axiom_holds(x).and_then(|a| Ok(a && u.counit_axiom_holds(x)? && u.coassociative_on(x)?));
        ensure(ok == Ok(true), || format!("Hopf axioms on {x}"))?;
        for y in &samples {
            ensure(u.coproduct_multiplicative_on(x, y) == Ok(true), || format!("Δ({x}·{y})"))?;
        }
    }

    let mut failures = Vec::new();
    for i in 0..u.rank() {
        for dir in [Direction::Forward, Direction::Inverse] {
            let t = |x: AlgElt| u.lusztig_t(i, dir, &x).expect("automorphism");
            let e: Vec<AlgElt> = (0..2).map(|j| t(u.e(j))).collect();
            let f: Vec<AlgElt> = (0..2).map(|j| t(u.f(j))).collect();
            let k: Vec<AlgElt> = (0..2).map(|j| t(u.k_simple(j, 1))).collect();
            let k_inv: Vec<AlgElt> = (0..2).map(|j| t(u.k_simple(j, -1))).collect();
            failures.extend(relation_failures(&u, &e, &f, &k, &k_inv).into_iter().map(|r| format!("T{i} {dir:?}: {r}")));
        }
    }
    ensure(failures.is_empty(), || failures.join(", "))?;

    let apply = |word: &[usize], x: &AlgElt| word.iter().rev().fold(x.clone(), |acc, &i| u.lusztig_t(i, Direction::Forward, &acc).expect("automorphism"));
    for x in generators(&u) {
        ensure(apply(&[0, 1, 0], &x) == apply(&[1, 0, 1], &x), || format!("braid relation on {x}"))?;
    }

    let mut compared = 0;
    for name in ["A2", "A3"] {
        let u = uq(name);
        let datum = u.datum();
        for w in datum.weyl_group() {
            let words = datum.reduced_words(&w);
            if words.len() < 2 || w.len() > 4 {
                continue;
            }
            let reference = SchubertPart::from_word(&u, &words[0], Side::F).map_err(|e| e.to_string())?;
            let degrees: Vec<LatVec> = datum.vectors_below(&vec![2; u.rank()]).into_iter().filter(|nu| height(nu) > 0).collect();
            for word in &words[1..] {
                let other = SchubertPart::from_word(&u, word, Side::F).map_err(|e| e.to_string())?;
                for nu in &degrees {
                    let same = reference.same_component(&other, &u, nu).map_err(|e| e.to_string())?;
                    ensure(same, || format!("{name} {w}: words {:?} and {word:?} differ in degree {nu:?}", words[0]))?;
                }
                compared += 1;
            }
        }
    }
    Ok(format!("Hopf axioms on {} samples; T_i preserve relations; braid relation; {compared} reduced-word pairs span alike", samples.len()))
}

fn main() -> ExitCode {
    let mut unexpected = 0;
    let mut report = |index: usize, title: &str, result: Check, expected_failure: bool| {
        match &result {
            Ok(detail) => println!("PASS criterion {index:>2} {title}: {detail}"),
            Err(reason) => println!("FAIL criterion {index:>2} {title}: {reason}"),
        }
        if result.is_err() && !expected_failure {
            unexpected += 1;
        }
    };
    report(1, "quantum Weyl identity", quantum_weyl(), false);
    let (catalog, documented) = sl3_catalog();
    report(2, "sl3 catalog identities", catalog, documented);
    report(3, "graded sweep", sweep_conj_a(), false);
    report(4, "A3 shift expansions", a3_expansions(), false);
    report(5, "explicit shift formula", prop_shift(), false);
    report(6, "PBW dimensions", pbw_dimensions(), false);
    report(7, "sl2 induced submodules", sl2_induced_structure(), false);
    report(8, "quotient existence", quotient_existence(), false);
    report(9, "basicness battery", basicness_battery(), false);
    report(10, "Hopf and automorphism suites", hopf_and_automorphisms(), false);
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} unexpected failure(s)");
        ExitCode::FAILURE
    }
}
