mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::hopf::fuzz;
use common::{fundamental_framing_factor, kauffman_prediction, qint};
use num_rational::BigRational;
use qinv_core::axioms::run_axiom_suite;
use qinv_core::fusion::{
    check_semisimple, frobenius_data, fusion_decompose, fusion_ring, surface_invariant,
};
use qinv_core::hopfcheck::{check_all, cyclic_group, dual_hopf, function_algebra, symmetric_group};
use qinv_core::links::{
    braid_closure, evaluate, evaluate_normalized, parse_diagram, SlicedDiagram,
};
use qinv_core::qcoords::{check_bialgebra, check_overlaps, counit_antipode_check};
use qinv_core::ribbon::{
    braid_rep, check_balancing, twist_generic, BraidGenerator, BraidWord, CrossingSign,
};
use qinv_core::ring::{find_truncation_level, specialize, Cyclotomic, Generic, LaurentScalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn closure(w: &str, colors: &[u32]) -> SlicedDiagram {
    braid_closure(&w.parse::<BraidWord>().unwrap(), colors).unwrap()
}

fn generic(d: &SlicedDiagram) -> LaurentScalar {
    evaluate(&Generic, d).unwrap()
}

const LEVELS: [(u32, u32); 4] = [(6, 3), (16, 4), (10, 5), (14, 7)];

fn axiom_suite() -> Outcome {
    let report = run_axiom_suite(4).map_err(|e| e.to_string())?;
    for r in &report.results {
        ensure(r.passed, format!("{} failed: {:?}", r.name, r.witness))?;
    }
    ensure(
        report.elapsed <= Duration::from_secs(300),
        format!("took {:?}", report.elapsed),
    )?;
    let cases: usize = report.results.iter().map(|r| r.cases).sum();
    Ok(format!(
        "{} families, {cases} cases in {:.1?}",
        report.results.len(),
        report.elapsed
    ))
}

fn balancing() -> Outcome {
    for m in 0..=3 {
        for n in 0..=3 {
            check_balancing(m, n).map_err(|e| e.to_string())?;
        }
    }
    Ok("all m, n <= 3".into())
}

fn torus() -> Outcome {
    for (m, l) in LEVELS {
        let f = frobenius_data(&fusion_ring(m).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let w = surface_invariant(1, &f);
        ensure(
            w == BigRational::from_integer((l - 1).into()),
            format!("ℓ={l}: w(T²)={w}"),
        )?;
    }
    Ok("w(T²) = ℓ-1 for ℓ in {3,4,5,7}".into())
}

fn fusion() -> Outcome {
    for (m, l) in LEVELS {
        ensure(
            find_truncation_level(m).map_err(|e| e.to_string())? == l,
            format!("level of m={m}"),
        )?;
        for a in 0..=l - 2 {
            for b in 0..=l - 2 {
                let d = fusion_decompose(a, b, m).map_err(|e| e.to_string())?;
                let kept: u64 = d
                    .multiplicities
                    .iter()
                    .enumerate()
                    .map(|(c, k)| (c as u64 + 1) * k)
                    .sum();
                ensure(
                    kept + l as u64 * d.negligible == ((a + 1) * (b + 1)) as u64,
                    format!("bookkeeping {a}⊗{b}"),
                )?;
            }
        }
        let r = fusion_ring(m).map_err(|e| e.to_string())?;
        ensure(
            r.check_associative().is_ok(),
            format!("ℓ={l} associativity"),
        )?;
        ensure(
            r.check_commutative().is_ok(),
            format!("ℓ={l} commutativity"),
        )?;
        ensure(r.check_unit().is_ok(), format!("ℓ={l} unit"))?;
        ensure(check_semisimple(&r), format!("ℓ={l} semisimplicity"))?;
    }
    Ok("bookkeeping and ring axioms for ℓ in {3,4,5,7}".into())
}

fn link_sanity() -> Outcome {
    for n in 0..=4 {
        let u = generic(&parse_diagram(&format!("cup 0 {n}\ncap 0")).unwrap());
        ensure(u == qint(n as i64 + 1), format!("unknot V_{n} = {u}"))?;
        let kink = generic(&closure("s1", &[n, n]));
        ensure(
            kink == &u * &twist_generic(n),
            format!("kink V_{n} = {kink}"),
        )?;
    }
    let word: BraidWord = "s1 s1 s1".parse().unwrap();
    let trefoil = evaluate_normalized(&Generic, &braid_closure(&word, &[1, 1]).unwrap()).unwrap();
    let oracle = &kauffman_prediction(2, &word) * &fundamental_framing_factor(&word);
    ensure(
        trefoil == oracle,
        format!("trefoil {trefoil} != oracle {oracle}"),
    )?;
    Ok(format!("trefoil = {trefoil}"))
}

fn presentation_independence() -> Outcome {
    let a = generic(&parse_diagram("cup 0 1\ncup 1 1\nx+ 0\nx+ 0\ncap 1\ncap 0").unwrap());
    let b = generic(&parse_diagram("cup* 0 1\ncup 2 1\nx+ 1\nx+ 1\ncap 2\ncap* 0").unwrap());
    let c = generic(&closure("s1 s1", &[1, 1]));
    ensure(a == b && b == c, format!("{a} / {b} / {c}"))?;
    Ok(format!("Hopf link = {a}"))
}

fn hopf_checker() -> Outcome {
    let mut total = (0, 0);
    for (name, g) in [
        ("Z/2", cyclic_group(2)),
        ("Z/4", cyclic_group(4)),
        ("S3", symmetric_group(3)),
    ] {
        let f = function_algebra(&g);
        ensure(
            check_all(&f).len() == 8 && check_all(&f).iter().all(|(_, r)| r.is_ok()),
            format!("Fun({name})"),
        )?;
        let dual = dual_hopf(&f).map_err(|e| e.to_string())?;
        ensure(
            check_all(&dual).iter().all(|(_, r)| r.is_ok()),
            format!("Fun({name})*"),
        )?;
        for b in [&f, &dual] {
            let (n, d) = fuzz(name, b, None);
            total = (total.0 + n, total.1 + d);
        }
    }
    Ok(format!(
        "{} mutations, {} break a diagram, all detected by that diagram's check",
        total.0, total.1
    ))
}

fn quantum_coordinates() -> Outcome {
    let overlaps = check_overlaps().map_err(|f| format!("{f:?}"))?;
    check_bialgebra().map_err(|f| format!("{f:?}"))?;
    counit_antipode_check().map_err(|f| format!("{f:?}"))?;
    Ok(format!(
        "{overlaps} overlaps resolve; 7 residues vanish; counit/antipode hold"
    ))
}

fn specialization() -> Outcome {
    let ring = Cyclotomic::new(10).map_err(|e| e.to_string())?;
    ensure(find_truncation_level(10).unwrap() == 5, "ℓ(10) != 5")?;
    let links = [
        closure("", &[3]),
        closure("s1 s1 s1", &[1, 1]),
        closure("s1 s1", &[1, 2]),
        closure("s1 s2^-1 s1 s2^-1", &[1, 1, 1]),
        closure("s1 s2 s1 s2", &[2, 2, 2]),
        parse_diagram("cup* 0 1\ncup 2 1\nx+ 1\nx+ 1\ncap 2\ncap* 0").unwrap(),
    ];
    for d in &links {
        let lhs = specialize(&generic(d), 10).unwrap();
        let rhs = evaluate(&ring, d).map_err(|e| e.to_string())?;
        ensure(lhs == rhs, format!("{d}: {lhs} != {rhs}"))?;
    }
    Ok(format!("{} links at m = 10", links.len()))
}

fn braid_homomorphism() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let word = |rng: &mut ChaCha8Rng| {
        let len = rng.gen_range(0..=6);
        BraidWord(
            (0..len)
                .map(|_| BraidGenerator {
                    index: rng.gen_range(1..3),
                    sign: if rng.gen_bool(0.5) {
                        CrossingSign::Positive
                    } else {
                        CrossingSign::Negative
                    },
                })
                .collect(),
        )
    };
    let colors = [1, 1, 1];
    for _ in 0..50 {
        let (w1, w2) = (word(&mut rng), word(&mut rng));
        let lhs = braid_rep(&Generic, &w1.concat(&w2), &colors).unwrap();
        let rhs = braid_rep(&Generic, &w1, &colors)
            .unwrap()
            .compose(&braid_rep(&Generic, &w2, &colors).unwrap())
            .unwrap();
        ensure(lhs == rhs, format!("{w1} · {w2}"))?;
    }
    Ok("50 random pairs".into())
}

fn main() -> std::process::ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("axiom suite", axiom_suite),
        ("balancing", balancing),
        ("torus invariant", torus),
        ("fusion oracle equivalence", fusion),
        ("link-invariant sanity", link_sanity),
        ("presentation independence", presentation_independence),
        ("hopf checker", hopf_checker),
        ("quantum coordinate algebra", quantum_coordinates),
        ("specialization commutes", specialization),
        ("braid homomorphism", braid_homomorphism),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({secs:.1}s): {detail}", i + 1),
            Err(why) => {
                println!("FAIL {:>2} {name} ({secs:.1}s): {why}", i + 1);
                failed.push(name);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed.len(),
        criteria.len()
    );
    if failed.is_empty() {
        std::process::ExitCode::SUCCESS
    } else {
        std::process::ExitCode::FAILURE
    }
}
