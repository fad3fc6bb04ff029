//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use common::{sizes, CAYLEY_WITHOUT_SIGNS, CAYLEY_WITH_SIGNS, LEVEL_COMPONENTS, MISPRINTED_LEVEL_CELLS};
use markoff_core::arith::{divisors_of, factorize, primes_in, shifted_square_sum, PrimeField};
use markoff_core::cayley::{
    compare_orbits, count_orbits, fricke_check, predicted_sizes, ExponentModel, ExponentPair, Mat2,
};
use markoff_core::graph::{build_graph, component_row, component_table, connected_components, GeneratorSet};
use markoff_core::spectral::{
    exceptional_count, full_spectrum, histogram_compare, lambda2, second_largest, DEFAULT_BINS,
};
use markoff_core::surface::{LevelSurface, Move};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn dehn_markoff(p: u64) -> markoff_core::graph::MarkoffGraph {
    build_graph(&LevelSurface::markoff(p).unwrap(), GeneratorSet::Dehn, true).unwrap()
}

fn counting_formula() -> Outcome {
    let cases: Vec<(u64, u64, i64)> = primes_in(5, 31)
        .into_iter()
        .flat_map(|p| (0..p).flat_map(move |k| (1..=3).map(move |a| (p, k, a))))
        .collect();
    cases.par_iter().try_for_each(|&(p, k, a)| {
        let s = LevelSurface::new(p, k as i64, a).map_err(|e| e.to_string())?;
        let (formula, found) = (s.count_solutions_formula(), s.enumerate_solutions().len() as u64);
        ensure(formula == found, || format!("p={p} k={k} a={a}: formula {formula}, enumeration {found}"))
    })?;
    Ok(format!("{} (p, k, a) cases", cases.len()))
}

fn level_table() -> Outcome {
    let rows = component_table(&[5, 7, 11, 13, 17], 3, GeneratorSet::MovesPermsSigns).map_err(|e| e.to_string())?;
    let mut exact = 0;
    for &(p, k, printed) in LEVEL_COMPONENTS {
        let row = rows.iter().find(|r| r.p == p && r.k == k).ok_or(format!("missing cell p={p} k={k}"))?;
        let got: Vec<u64> = row.component_sizes.iter().map(|&s| s as u64).collect();
        match MISPRINTED_LEVEL_CELLS.iter().find(|c| c.0 == p && c.1 == k) {
            Some(&(_, _, actual)) => {
                let points = LevelSurface::new(p, k as i64, 3).unwrap().count_solutions_formula();
                let printed_total: u64 = sizes(printed).iter().sum();
                ensure(printed_total != points, || format!("p={p} k={k} printed cell is consistent"))?;
                ensure(got == sizes(actual), || format!("p={p} k={k}: got {got:?}"))?;
            }
            None => {
                ensure(got == sizes(printed), || format!("p={p} k={k}: got {got:?}, printed {printed}"))?;
                exact += 1;
            }
        }
    }
    Ok(format!(
        "{exact} cells exact; {} cells with inconsistent printed mass reproduced as {{6,72}}",
        MISPRINTED_LEVEL_CELLS.len()
    ))
}

fn figure_p7_k2() -> Outcome {
    let sizes_for = |gens| component_row(7, 2, 3, gens).map(|r| r.component_sizes).map_err(|e| e.to_string());
    let perms = sizes_for(GeneratorSet::MovesPerms)?;
    let dehn = sizes_for(GeneratorSet::Dehn)?;
    let full = sizes_for(GeneratorSet::MovesPermsSigns)?;
    ensure(perms == [1, 3, 4, 6, 12, 24], || format!("moves+perms {perms:?}"))?;
    ensure(dehn == [1, 1, 2, 2, 4, 4, 4, 8, 8, 16], || format!("dehn {dehn:?}"))?;
    ensure(full == [4, 6, 16, 24], || format!("full {full:?}"))?;
    Ok("moves+perms {1,3,4,6,12,24}; dehn 10 components; full {4,6,16,24}".into())
}

fn cayley_prediction() -> Outcome {
    let primes = primes_in(5, 199);
    for (signs, table) in [(true, CAYLEY_WITH_SIGNS), (false, CAYLEY_WITHOUT_SIGNS)] {
        let rows = compare_orbits(&primes, signs, 199).map_err(|e| e.to_string())?;
        for row in &rows {
            ensure(row.matches() == Some(true), || {
                format!("p={} signs={signs}: predicted {:?}, found {:?}", row.p, row.predicted, row.empirical)
            })?;
        }
        for &(p, printed) in table {
            let predicted = predicted_sizes(p, signs).map_err(|e| e.to_string())?;
            ensure(predicted == sizes(printed), || format!("p={p} signs={signs}: table row differs"))?;
        }
    }
    Ok(format!("{} primes, both settings, and every tabulated row", primes.len()))
}

fn cayley_mass() -> Outcome {
    let primes = primes_in(5, 499);
    for &p in &primes {
        for signs in [false, true] {
            let total: u64 = predicted_sizes(p, signs).map_err(|e| e.to_string())?.iter().sum();
            ensure(total == p * p + 1, || format!("p={p} signs={signs}: mass {total}"))?;
        }
    }
    Ok(format!("{} primes", primes.len()))
}

fn orbit_counts() -> Outcome {
    for (p, signs, want) in [(29, false, 12), (71, false, 18), (5, true, 3), (199, true, 14)] {
        let got = count_orbits(p, signs).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("p={p} signs={signs}: {got} orbits, expected {want}"))?;
    }
    let primes = primes_in(5, 10_000);
    for &p in &primes {
        let count = count_orbits(p, false).map_err(|e| e.to_string())?;
        let bound = divisors_of(&factorize(p * p - 1)).len() as u64;
        ensure(count <= bound, || format!("p={p}: {count} orbits > {bound} divisors"))?;
    }
    Ok(format!("worked values; divisor bound for {} primes", primes.len()))
}

fn connectivity() -> Outcome {
    let primes = primes_in(5, 300);
    primes.par_iter().try_for_each(|&p| {
        let comps = connected_components(&dehn_markoff(p));
        ensure(comps.len() == 1, || format!("p={p}: components {comps:?}"))
    })?;
    Ok(format!("{} primes connected", primes.len()))
}

fn spectral_band() -> Outcome {
    let primes = primes_in(100, 300);
    let results: Vec<(u64, f64, f64)> = primes
        .par_iter()
        .map(|&p| {
            let l = lambda2(&dehn_markoff(p), 1e-8).map_err(|e| e.to_string())?;
            Ok((p, l.value, l.residual))
        })
        .collect::<Result<_, String>>()?;
    let mut worst_residual = 0.0f64;
    for &(p, l2, residual) in &results {
        worst_residual = worst_residual.max(residual);
        ensure(residual < 1e-8, || format!("p={p}: residual {residual:e}"))?;
        let band = if p % 4 == 3 { (2.70, 2.90) } else { (2.80, 3.00) };
        ensure(band.0 < l2 && l2 < band.1, || format!("p={p}: lambda2 {l2} outside {band:?}"))?;
    }
    let small = primes_in(5, 83);
    let mut worst_gap = 0.0f64;
    for &p in &small {
        let g = dehn_markoff(p);
        let dense = second_largest(&full_spectrum(&g).map_err(|e| e.to_string())?).unwrap();
        let l = lambda2(&g, 1e-8).map_err(|e| e.to_string())?;
        let gap = (l.value - dense).abs();
        worst_gap = worst_gap.max(gap);
        ensure(gap < 1e-6, || format!("p={p}: Lanczos {} vs dense {dense}", l.value))?;
    }
    Ok(format!(
        "{} primes in band, max residual {worst_residual:.1e}; {} primes Lanczos vs dense, max gap {worst_gap:.1e}",
        results.len(),
        small.len()
    ))
}

fn kesten_mckay_fit() -> Outcome {
    let mut notes = Vec::new();
    for p in [83u64, 89] {
        let g = dehn_markoff(p);
        let spectrum = full_spectrum(&g).map_err(|e| e.to_string())?;
        let expected = g.surface().count_solutions_formula() as usize - 1;
        ensure(spectrum.len() == expected, || format!("p={p}: {} eigenvalues", spectrum.len()))?;
        let l1 = histogram_compare(&spectrum, DEFAULT_BINS).map_err(|e| e.to_string())?.l1_distance;
        ensure(l1 < 0.08, || format!("p={p}: L1 {l1}"))?;
        notes.push(format!("p={p} V={expected} L1={l1:.4}"));
    }
    Ok(notes.join("; "))
}

fn exceptional_scaling() -> Outcome {
    let primes = [13u64, 17, 29, 37, 41, 53, 61, 73, 89, 97];
    let counts: Vec<usize> = primes
        .iter()
        .map(|&p| full_spectrum(&dehn_markoff(p)).map(|s| exceptional_count(&s)).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    ensure(counts.iter().all(|&c| c > 0), || format!("counts {counts:?}"))?;
    let xs: Vec<f64> = primes.iter().map(|&p| (p as f64).ln()).collect();
    let ys: Vec<f64> = counts.iter().map(|&c| (c as f64).ln()).collect();
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    ensure((0.6..=1.4).contains(&slope), || format!("slope {slope}, counts {counts:?}"))?;
    Ok(format!("counts {counts:?}, slope {slope:.3}"))
}

fn oracle_identities() -> Outcome {
    let primes = primes_in(5, 101);
    for &p in &primes {
        for s in 1..p {
            let sum = shifted_square_sum(s, p);
            ensure(sum == -1, || format!("p={p} s={s}: sum {sum}"))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let small = primes_in(5, 97);
    let fields: Vec<PrimeField> = small.iter().map(|&p| PrimeField::new(p).unwrap()).collect();
    let random_unimodular = |f: &PrimeField, rng: &mut ChaCha8Rng| {
        let p = f.modulus();
        let (a, b, c) = (rng.random_range(1..p), rng.random_range(0..p), rng.random_range(0..p));
        let d = f.mul(f.add(1, f.mul(b, c)), f.inv(a).unwrap());
        Mat2::new(a, b, c, d)
    };
    let mut on_cubic = 0;
    for _ in 0..10_000 {
        let f = &fields[rng.random_range(0..fields.len())];
        let (a, b) = (random_unimodular(f, &mut rng), random_unimodular(f, &mut rng));
        let r = fricke_check(f, a, b).map_err(|e| e.to_string())?;
        ensure(r.holds(), || format!("p={}: {a:?} {b:?}", f.modulus()))?;
        on_cubic += r.on_cayley_cubic() as usize;
    }
    let models: Vec<ExponentModel> = small.iter().map(|&p| ExponentModel::new(p).unwrap()).collect();
    for _ in 0..10_000 {
        let model = &models[rng.random_range(0..models.len())];
        let n = model.order();
        let e = ExponentPair { u: rng.random_range(0..n), v: rng.random_range(0..n) };
        let m = Move::ALL[rng.random_range(0..Move::ALL.len())];
        ensure(model.check(e, m), || format!("p={} {e:?} {m}", model.field().base().modulus()))?;
    }
    Ok(format!(
        "shifted sums for {} primes; 10000 Fricke pairs ({on_cubic} on the cubic); 10000 linear-action cases",
        primes.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("counting formula vs enumeration", counting_formula),
        ("level component table", level_table),
        ("p=7 k=2 components by generator set", figure_p7_k2),
        ("Cayley orbit prediction vs enumeration", cayley_prediction),
        ("Cayley orbit mass", cayley_mass),
        ("Cayley orbit counts", orbit_counts),
        ("connectivity of k=0 Dehn graphs", connectivity),
        ("lambda2 bands and Lanczos vs dense", spectral_band),
        ("Kesten-McKay fit", kesten_mckay_fit),
        ("exceptional eigenvalue scaling", exceptional_scaling),
        ("oracle identities", oracle_identities),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    if failed == 0 {
        println!("all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("{failed} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    }
}
