//! Acceptance criteria, one test each. Every test writes a single
//! `criterion N: PASS|FAIL ...` line to stderr (bypassing output capture)
//! and fails if the criterion is not met.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::{Duration, Instant};

use num_integer::Integer;

use tensordeg::coset::{todd_coxeter, EnumerationStatus, Presentation};
use tensordeg::degrees::{rel_n_tensor_degree, rel_n_tensor_degree_naive, tensor_degree};
use tensordeg::group::FiniteGroup;
use tensordeg::rational::ExactRational;
use tensordeg::spec::{parse_words, GroupSpec};
use tensordeg::tensor::{tensor_square_presentation, TensorSquare};
use tensordeg::verify::{builtin_corpus, run_suite, Config, TensorCache, TheoremId};

type Outcome = Result<String, String>;

fn report(number: u32, title: &str, outcome: Outcome) {
    let line = match &outcome {
        Ok(detail) => format!("criterion {number}: PASS {title} ({detail})"),
        Err(why) => format!("criterion {number}: FAIL {title}: {why}"),
    };
    let _ = writeln!(std::io::stderr(), "{line}");
    if let Err(why) = outcome {
        panic!("criterion {number} failed: {why}");
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))
}

fn group(spec: &str) -> Result<FiniteGroup, String> {
    GroupSpec::parse(spec)
        .and_then(|s| s.build(64))
        .map_err(|e| e.to_string())
}

fn square(g: &FiniteGroup) -> Result<TensorSquare, String> {
    TensorSquare::compute(g, 1_000_000).map_err(|e| e.to_string())
}

fn r(n: i64, d: i64) -> ExactRational {
    ExactRational::new(n, d)
}

fn degree_of(spec: &str, words: &str, n: usize) -> Result<ExactRational, String> {
    let g = group(spec)?;
    let t = square(&g)?;
    let gens = parse_words(words)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|w| g.eval_word(w).map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    rel_n_tensor_degree(&g, &t, &g.subgroup_generated(&gens), n).map_err(|e| e.to_string())
}

#[test]
fn criterion_1_example_cyclic_four() {
    let outcome = (|| {
        let start = Instant::now();
        let d = degree_of("C4", "a^2", 2)?;
        within(start, Duration::from_secs(1))?;
        ensure(d == r(1, 1), || {
            format!("d2(<a^2>, C4) = {d}, expected 1/1")
        })?;
        Ok(format!("d2(<a^2>, C4) = {d} in {:?}", start.elapsed()))
    })();
    report(1, "example C4, H = <a^2>, n = 2", outcome);
}

#[test]
fn criterion_2_example_dihedral_eight() {
    let outcome = (|| {
        let g = group("D8")?;
        let t = square(&g)?;
        let gens = ["a^2", "a*b"]
            .iter()
            .map(|w| {
                g.eval_word(&parse_words(w).unwrap()[0])
                    .map_err(|e| e.to_string())
            })
            .collect::<Result<Vec<_>, _>>()?;
        let h = g.subgroup_generated(&gens);
        let dp = rel_n_tensor_degree(&g, &t, &h, 4).map_err(|e| e.to_string())?;
        let naive = rel_n_tensor_degree_naive(&g, &t, &h, 4).map_err(|e| e.to_string())?;
        ensure(dp == naive, || format!("DP {dp} != naive {naive}"))?;
        ensure(dp == r(1, 1), || {
            format!("d4 = {dp}, expected 1/1 (H is abelian)")
        })?;

        let config = Config::default();
        let cache = TensorCache::new(config.max_cosets);
        let corpus = builtin_corpus(16, &config, &cache).map_err(|e| e.to_string())?;
        let rep =
            run_suite(&corpus, &[TheoremId::Ex3_3], &config, &cache).map_err(|e| e.to_string())?;
        let flagged: Vec<_> = rep.flagged().collect();
        ensure(flagged.len() == 1, || {
            format!("{} flagged records, expected 1", flagged.len())
        })?;
        ensure(flagged[0].rhs == Some(r(192, 2048)), || {
            format!("flagged rhs {:?}", flagged[0].rhs)
        })?;
        ensure(rep.violations().count() == 0, || {
            "ex-3.3 produced a violation".into()
        })?;
        Ok(format!(
            "d4(<a^2,ab>, D8) = {dp} by DP and oracle; one flagged record vs 192/2048"
        ))
    })();
    report(2, "example D8, H = <a^2, ab>, n = 4", outcome);
}

#[test]
fn criterion_3_example_symmetric_three() {
    let outcome = (|| {
        let start = Instant::now();
        let g = group("S3")?;
        let t = square(&g)?;
        let mut values = Vec::new();
        for n in 1..=4usize {
            let d = rel_n_tensor_degree(&g, &t, &g.whole(), n).map_err(|e| e.to_string())?;
            let bound = ExactRational::dyadic_gap(n as u32, 1);
            ensure(d <= bound, || format!("d{n}(S3) = {d} > {bound}"))?;
            values.push(d.to_string());
        }
        let z = t.tensor_center(&g).map_err(|e| e.to_string())?;
        ensure(z.order() == 1, || format!("|Z⊗(S3)| = {}", z.order()))?;
        let dt = tensor_degree(&g, &t).map_err(|e| e.to_string())?;
        ensure(dt <= r(1, 2), || format!("d⊗(S3) = {dt} > 1/2"))?;
        within(start, Duration::from_secs(5))?;
        Ok(format!("d1..d4 = {}; d⊗ = {dt}; Z⊗ = 1", values.join(", ")))
    })();
    report(3, "example S3 bounds", outcome);
}

#[test]
fn criterion_4_abelian_oracle() {
    let outcome = (|| {
        for n in 2..=8usize {
            let got = square(&group(&format!("C{n}"))?)?.order();
            ensure(got == n, || format!("|C{n}⊗C{n}| = {got}"))?;
        }
        for (spec, dims) in [
            ("C2xC2", vec![2usize, 2]),
            ("C2xC4", vec![2, 4]),
            ("C2xC2xC2", vec![2, 2, 2]),
            ("C3xC3", vec![3, 3]),
        ] {
            let expected: usize = dims
                .iter()
                .flat_map(|&a| dims.iter().map(move |&b| a.gcd(&b)))
                .product();
            let got = square(&group(spec)?)?.order();
            ensure(got == expected, || {
                format!("|{spec}⊗{spec}| = {got}, oracle {expected}")
            })?;
        }
        for p in [2i64, 3, 5] {
            let g = group(&format!("C{p}"))?;
            let d = tensor_degree(&g, &square(&g)?).map_err(|e| e.to_string())?;
            // pairs (x, y) in Z_p² with xy ≡ 0 mod p
            let pairs = (0..p)
                .flat_map(|x| (0..p).map(move |y| (x * y) % p))
                .filter(|&v| v == 0)
                .count();
            ensure(d == r(pairs as i64, p * p), || format!("d⊗(C{p}) = {d}"))?;
            ensure(d == r(2 * p - 1, p * p), || format!("d⊗(C{p}) = {d}"))?;
        }
        Ok("cyclic n = 2..8, four products, d⊗(Cp) for p = 2, 3, 5".into())
    })();
    report(4, "abelian bilinear oracle", outcome);
}

#[test]
fn criterion_5_structural_invariants() {
    let outcome = (|| {
        let start = Instant::now();
        let config = Config::default();
        let cache = TensorCache::new(config.max_cosets);
        let corpus = builtin_corpus(16, &config, &cache).map_err(|e| e.to_string())?;
        for entry in &corpus {
            let t = entry
                .tensor
                .as_ref()
                .map_err(|e| format!("{}: {e}", entry.spec))?;
            t.check_invariants(&entry.group)
                .map_err(|e| format!("{}: {e}", entry.spec))?;
        }
        within(start, Duration::from_secs(300))?;
        Ok(format!("{} groups in {:?}", corpus.len(), start.elapsed()))
    })();
    report(5, "structural invariants over the corpus", outcome);
}

#[test]
fn criterion_6_oracle_equivalence() {
    let outcome = (|| {
        let config = Config::default();
        let cache = TensorCache::new(config.max_cosets);
        let corpus = builtin_corpus(12, &config, &cache).map_err(|e| e.to_string())?;
        let mut instances = 0;
        for entry in &corpus {
            let g = &entry.group;
            let t = entry
                .tensor
                .as_ref()
                .map_err(|e| format!("{}: {e}", entry.spec))?;
            for h in g.all_subgroups(g.order()).map_err(|e| e.to_string())? {
                for n in 1..=3 {
                    let dp = rel_n_tensor_degree(g, t, &h, n).map_err(|e| e.to_string())?;
                    let naive =
                        rel_n_tensor_degree_naive(g, t, &h, n).map_err(|e| e.to_string())?;
                    ensure(dp == naive, || {
                        format!(
                            "{} H={:?} n={n}: DP {dp} != naive {naive}",
                            entry.spec,
                            h.elements()
                        )
                    })?;
                    instances += 1;
                }
            }
        }
        Ok(format!(
            "{instances} instances over {} groups",
            corpus.len()
        ))
    })();
    report(6, "DP degree equals naive enumeration", outcome);
}

#[test]
fn criterion_7_theorem_suite() {
    let outcome = (|| {
        let start = Instant::now();
        let ids = [
            TheoremId::Thm1_1,
            TheoremId::Thm1_2,
            TheoremId::Thm1_3,
            TheoremId::Lem2_1,
            TheoremId::Thm2_2,
            TheoremId::Thm2_3,
            TheoremId::Thm2_5,
            TheoremId::Thm2_6,
            TheoremId::Lem2_7,
            TheoremId::Thm2_8,
            TheoremId::ThreeCases,
            TheoremId::Quotient,
            TheoremId::SanityErl,
            TheoremId::SanityLescot,
        ];
        let config = Config::default();
        let cache = TensorCache::new(config.max_cosets);
        let corpus = builtin_corpus(16, &config, &cache).map_err(|e| e.to_string())?;
        let rep = run_suite(&corpus, &ids, &config, &cache).map_err(|e| e.to_string())?;
        within(start, Duration::from_secs(600))?;
        for id in ids {
            ensure(rep.checks.iter().any(|c| c.id == id.as_str()), || {
                format!("{id} was never evaluated")
            })?;
        }
        ensure(rep.summary.skipped == 0, || {
            format!("{} skipped records", rep.summary.skipped)
        })?;
        let violations: Vec<_> = rep.violations().collect();
        ensure(
            violations
                .iter()
                .all(|v| v.lhs.is_some() && v.rhs.is_some() && v.witness.is_some()),
            || "a violation lacks exact sides or a witness".into(),
        )?;
        let mut by_id: BTreeMap<String, usize> = BTreeMap::new();
        for v in &violations {
            let key = match &v.note {
                Some(note) => format!("{}/{note}", v.id),
                None => v.id.clone(),
            };
            *by_id.entry(key).or_default() += 1;
        }
        let first = violations.first().map(|v| {
            format!(
                "; first: {} on {} H={:?} n={:?}: {} {} {} false",
                v.id,
                v.group,
                v.subgroup,
                v.n,
                v.lhs.as_ref().unwrap(),
                v.relation.as_str(),
                v.rhs.as_ref().unwrap()
            )
        });
        ensure(violations.is_empty(), || {
            format!(
                "{} of {} records are false: {:?}{}",
                violations.len(),
                rep.checks.len(),
                by_id,
                first.unwrap_or_default()
            )
        })?;
        Ok(format!(
            "{} records, all hold, {:?}",
            rep.checks.len(),
            start.elapsed()
        ))
    })();
    report(7, "theorem suite has no false records", outcome);
}

#[test]
fn criterion_8_coset_enumeration() {
    let outcome = (|| {
        let presentations: [(&str, usize, &[&[i64]], usize); 4] = [
            ("C4", 1, &[&[1, 1, 1, 1]], 4),
            ("D8", 2, &[&[1, 1, 1, 1], &[2, 2], &[1, 2, 1, 2]], 8),
            (
                "Q8",
                2,
                &[&[1, 1, 1, 1], &[1, 1, -2, -2], &[-2, 1, 2, 1]],
                8,
            ),
            ("S3", 2, &[&[1, 1, 1], &[2, 2], &[1, 2, 1, 2]], 6),
        ];
        for (name, gens, rels, expected) in presentations {
            let p = Presentation::from_signed(gens, rels).map_err(|e| e.to_string())?;
            let table = todd_coxeter(&p, 1_000_000).map_err(|e| e.to_string())?;
            ensure(
                table.is_complete() && table.coset_count() == expected,
                || {
                    format!(
                        "{name}: {} cosets, status {:?}",
                        table.coset_count(),
                        table.status()
                    )
                },
            )?;
        }

        let config = Config::default();
        let cache = TensorCache::new(config.max_cosets);
        let corpus = builtin_corpus(16, &config, &cache).map_err(|e| e.to_string())?;
        for entry in &corpus {
            entry
                .tensor
                .as_ref()
                .map_err(|e| format!("{}: {e}", entry.spec))?;
        }

        let d8 = group("D8")?;
        let p = tensor_square_presentation(&d8).map_err(|e| e.to_string())?;
        let table = todd_coxeter(&p, 10).map_err(|e| e.to_string())?;
        ensure(table.status() == EnumerationStatus::ExceededLimit, || {
            format!("max_cosets = 10 gave status {:?}", table.status())
        })?;
        let small = Config {
            max_cosets: 10,
            ..Config::default()
        };
        let small_cache = TensorCache::new(10);
        let corpus10 = builtin_corpus(16, &small, &small_cache).map_err(|e| e.to_string())?;
        let rep = run_suite(&corpus10, &TheoremId::ALL, &small, &small_cache)
            .map_err(|e| e.to_string())?;
        ensure(rep.summary.skipped > 0, || {
            "max_cosets = 10 skipped nothing".into()
        })?;
        Ok(format!(
            "standard presentations ok; {} tensor squares complete; max_cosets = 10 skipped {} records",
            corpus.len(),
            rep.summary.skipped
        ))
    })();
    report(8, "coset enumeration", outcome);
}

#[test]
fn criterion_9_determinism() {
    let outcome = (|| {
        let render = |jobs: usize| -> Result<(String, String), String> {
            let config = Config {
                jobs,
                ..Config::default()
            };
            let cache = TensorCache::new(config.max_cosets);
            let corpus = builtin_corpus(16, &config, &cache).map_err(|e| e.to_string())?;
            let rep =
                run_suite(&corpus, &TheoremId::ALL, &config, &cache).map_err(|e| e.to_string())?;
            Ok((
                rep.to_json().map_err(|e| e.to_string())?,
                rep.to_csv().map_err(|e| e.to_string())?,
            ))
        };
        let one = render(1)?;
        let eight = render(8)?;
        ensure(one.0 == eight.0, || {
            "JSON reports differ between 1 and 8 workers".into()
        })?;
        ensure(one.1 == eight.1, || {
            "CSV reports differ between 1 and 8 workers".into()
        })?;
        Ok(format!(
            "{} byte JSON report identical for 1 and 8 workers",
            one.0.len()
        ))
    })();
    report(9, "report determinism", outcome);
}
