use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use log::{info, warn};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use markoff_core::arith::{primes_in, PrimeField};
use markoff_core::cayley::{compare_orbits, fricke_check, Mat2};
use markoff_core::graph::{build_graph, connected_components, join_sizes, GeneratorSet, MarkoffGraph};
use markoff_core::spectral::{
    exceptional_count, full_spectrum_capped, histogram_compare, lambda2, perron_multiplicity, second_largest,
    DEFAULT_DENSE_CAP, MIN_BINS,
};
use markoff_core::surface::LevelSurface;

use crate::args::{
    check_prime, usage, CayleyArgs, ComponentsArgs, CountArgs, Format, FrickeArgs, Lambda2Args, SpectrumArgs,
    TableArgs,
};
use crate::output::{emit, read_records, ser_f64, write_file};
use crate::VerificationFailed;

fn surface(p: u64, k: u64, a: i64) -> Result<LevelSurface> {
    LevelSurface::new(p, k as i64, a).map_err(|e| usage(e.to_string()))
}

#[derive(Serialize)]
struct CountRecord {
    p: u64,
    k: u64,
    a: u64,
    formula: u64,
    enumerated: Option<u64>,
    status: &'static str,
}

pub fn count(args: &CountArgs, format: Format, out: Option<&Path>) -> Result<()> {
    check_prime(args.p)?;
    let s = surface(args.p, args.k.single(args.p, args.a)?, args.a)?;
    let formula = s.count_solutions_formula();
    let enumerated = (!args.skip_enumeration).then(|| s.enumerate_solutions().len() as u64);
    let status = match enumerated {
        None => "skipped",
        Some(n) if n == formula => "ok",
        Some(_) => "mismatch",
    };
    let row = CountRecord { p: s.p(), k: s.k(), a: s.a(), formula, enumerated, status };
    emit(&[row], format, out)?;
    if status == "mismatch" {
        return Err(VerificationFailed(format!("formula {formula} != enumeration {enumerated:?}")).into());
    }
    Ok(())
}

#[derive(Serialize)]
struct ComponentRecord {
    p: u64,
    k: u64,
    a: u64,
    gens: GeneratorSet,
    vertices: usize,
    component_count: usize,
    component_sizes: String,
}

fn component_record(p: u64, k: u64, a: i64, gens: GeneratorSet, exclude_origin: bool) -> Result<ComponentRecord> {
    let s = surface(p, k, a)?;
    let g = build_graph(&s, gens, exclude_origin && s.k() == 0)?;
    let sizes = connected_components(&g);
    Ok(ComponentRecord {
        p,
        k: s.k(),
        a: s.a(),
        gens,
        vertices: g.vertex_count(),
        component_count: sizes.len(),
        component_sizes: join_sizes(&sizes),
    })
}

pub fn components(args: &ComponentsArgs, format: Format, out: Option<&Path>) -> Result<()> {
    check_prime(args.p)?;
    let k = args.k.single(args.p, args.a)?;
    if args.exclude_origin && k != 0 {
        return Err(usage("--exclude-origin only applies to the level k = 0"));
    }
    let row = component_record(args.p, k, args.a, args.gens, args.exclude_origin)?;
    emit(&[row], format, out)
}

pub fn components_table(args: &TableArgs, format: Format, out: Option<&Path>) -> Result<()> {
    let mut cells = Vec::new();
    for p in args.range.primes()? {
        for k in args.k.levels(p, args.a)? {
            cells.push((p, k));
        }
    }
    let rows: Vec<ComponentRecord> = cells
        .par_iter()
        .map(|&(p, k)| component_record(p, k, args.a, args.gens, args.exclude_origin))
        .collect::<Result<_>>()?;
    emit(&rows, format, out)
}

fn dehn_graph(p: u64, k: u64, a: i64) -> Result<MarkoffGraph> {
    let s = surface(p, k, a)?;
    Ok(build_graph(&s, GeneratorSet::Dehn, s.k() == 0)?)
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
struct Lambda2Record {
    p: u64,
    vertices: usize,
    #[serde(serialize_with = "ser_f64")]
    lambda2: f64,
    #[serde(serialize_with = "ser_f64")]
    residual: f64,
    converged: bool,
}

pub fn lambda2_sweep(args: &Lambda2Args, format: Format, out: Option<&Path>) -> Result<()> {
    if args.tol.is_nan() || args.tol <= 0.0 {
        return Err(usage("--tol must be positive"));
    }
    let primes = args.range.primes()?;
    let mut done: BTreeMap<u64, Lambda2Record> = match out {
        Some(path) => read_records::<Lambda2Record>(path, format)?.into_iter().map(|r| (r.p, r)).collect(),
        None => BTreeMap::new(),
    };
    let todo: Vec<u64> = primes.iter().copied().filter(|p| !done.contains_key(p)).collect();
    if todo.len() < primes.len() {
        info!("resuming: {} of {} primes already present", primes.len() - todo.len(), primes.len());
    }
    let batch = rayon::current_num_threads().max(1);
    let mut failures = 0;
    for chunk in todo.chunks(batch) {
        let results: Vec<(u64, Result<Lambda2Record>)> = chunk
            .par_iter()
            .map(|&p| {
                let run = || -> Result<Lambda2Record> {
                    let g = dehn_graph(p, args.k.single(p, args.a)?, args.a)?;
                    let l = lambda2(&g, args.tol)?;
                    Ok(Lambda2Record {
                        p,
                        vertices: g.vertex_count(),
                        lambda2: l.value,
                        residual: l.residual,
                        converged: l.converged,
                    })
                };
                (p, run())
            })
            .collect();
        for (p, res) in results {
            match res {
                Ok(row) => {
                    if !row.converged {
                        warn!("p={p}: not converged, residual {:e}", row.residual);
                    }
                    info!("p={p}: lambda2 = {}", row.lambda2);
                    done.insert(p, row);
                }
                Err(e) => {
                    failures += 1;
                    warn!("p={p}: {e:#}");
                }
            }
        }
        if let Some(path) = out {
            let rows: Vec<Lambda2Record> = done.values().cloned().collect();
            write_file(&rows, format, path)?;
        }
    }
    let rows: Vec<Lambda2Record> = done.into_values().collect();
    match out {
        None => emit(&rows, format, None)?,
        // nothing new, but normalize the file
        Some(path) if todo.is_empty() => write_file(&rows, format, path)?,
        Some(_) => {}
    }
    if failures > 0 {
        warn!("{failures} primes failed");
    }
    Ok(())
}

#[derive(Serialize)]
struct SpectrumSummary {
    p: u64,
    k: u64,
    vertices: usize,
    #[serde(serialize_with = "ser_f64")]
    lambda2: f64,
    multiplicity_of_3: usize,
    exceptional_count: usize,
    #[serde(serialize_with = "ser_f64")]
    l1_distance: f64,
}

#[derive(Serialize)]
struct EigenvalueRecord {
    index: usize,
    #[serde(serialize_with = "ser_f64")]
    eigenvalue: f64,
}

#[derive(Serialize)]
struct HistogramRecord {
    #[serde(serialize_with = "ser_f64")]
    bin_center: f64,
    #[serde(serialize_with = "ser_f64")]
    empirical: f64,
    #[serde(serialize_with = "ser_f64")]
    kesten_mckay: f64,
}

pub fn spectrum(args: &SpectrumArgs, format: Format, out: Option<&Path>) -> Result<()> {
    if args.nbins < MIN_BINS {
        return Err(usage(format!("--nbins must be at least {MIN_BINS}, got {}", args.nbins)));
    }
    if args.dense_cap > DEFAULT_DENSE_CAP {
        return Err(usage(format!("--dense-cap may not exceed {DEFAULT_DENSE_CAP}")));
    }
    let primes = args.range.primes()?;
    let mut cells = Vec::new();
    for &p in &primes {
        let k = args.k.single(p, args.a)?;
        let s = surface(p, k, args.a)?;
        let vertices = s.count_solutions_formula() as usize - usize::from(s.k() == 0);
        if vertices > args.dense_cap {
            return Err(usage(format!(
                "p={p} gives {vertices} vertices, above the dense cap of {}; use `lambda2` for large graphs \
                 or choose p with about p^2 <= {}",
                args.dense_cap, args.dense_cap
            )));
        }
        cells.push((p, k));
    }
    if let Some(dir) = out {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let summaries: Vec<SpectrumSummary> = cells
        .iter()
        .map(|&(p, k)| {
            let g = dehn_graph(p, k, args.a)?;
            let spectrum = full_spectrum_capped(&g, args.dense_cap)?;
            let hist = histogram_compare(&spectrum, args.nbins)?;
            if let Some(dir) = out {
                let ext = format.extension();
                let eig: Vec<EigenvalueRecord> = spectrum
                    .iter()
                    .enumerate()
                    .map(|(index, &eigenvalue)| EigenvalueRecord { index, eigenvalue })
                    .collect();
                write_file(&eig, format, &dir.join(format!("spectrum_p{p}.{ext}")))?;
                let bins: Vec<HistogramRecord> = hist
                    .bin_centers()
                    .into_iter()
                    .zip(hist.empirical.iter().zip(&hist.kesten_mckay))
                    .map(|(bin_center, (&empirical, &kesten_mckay))| HistogramRecord {
                        bin_center,
                        empirical,
                        kesten_mckay,
                    })
                    .collect();
                write_file(&bins, format, &dir.join(format!("histogram_p{p}.{ext}")))?;
            }
            Ok(SpectrumSummary {
                p,
                k: g.surface().k(),
                vertices: g.vertex_count(),
                lambda2: second_largest(&spectrum).unwrap_or(f64::NAN),
                multiplicity_of_3: perron_multiplicity(&spectrum),
                exceptional_count: exceptional_count(&spectrum),
                l1_distance: hist.l1_distance,
            })
        })
        .collect::<Result<_>>()?;
    emit(&summaries, format, None)?;
    if let Some(dir) = out {
        emit(&summaries, format, Some(&dir.join(format!("summary.{}", format.extension()))))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct CayleyRecord {
    p: u64,
    signs: bool,
    predicted_sizes: String,
    empirical_sizes: Option<String>,
    #[serde(rename = "match")]
    matches: Option<bool>,
}

pub fn cayley(args: &CayleyArgs, format: Format, out: Option<&Path>) -> Result<()> {
    let primes = args.range.primes()?;
    let cap = if args.verify { args.cap } else { 0 };
    let rows = compare_orbits(&primes, args.signs, cap)?;
    if args.verify {
        for r in rows.iter().filter(|r| r.empirical.is_none()) {
            warn!("p={} is above the enumeration cap {}; not verified", r.p, args.cap);
        }
    }
    let mismatches: Vec<u64> = rows.iter().filter(|r| r.matches() == Some(false)).map(|r| r.p).collect();
    let records: Vec<CayleyRecord> = rows
        .into_iter()
        .map(|r| CayleyRecord {
            p: r.p,
            signs: r.signs,
            matches: r.matches(),
            predicted_sizes: join_sizes(&r.predicted),
            empirical_sizes: r.empirical.as_deref().map(join_sizes),
        })
        .collect();
    emit(&records, format, out)?;
    if !mismatches.is_empty() {
        return Err(VerificationFailed(format!("prediction differs from enumeration for p in {mismatches:?}")).into());
    }
    Ok(())
}

#[derive(Serialize)]
struct FrickeRecord {
    samples: usize,
    failures: usize,
    on_cayley_cubic: usize,
    commuting_pairs: usize,
}

fn random_unimodular(f: &PrimeField, rng: &mut ChaCha8Rng) -> Mat2 {
    let p = f.modulus();
    let (a, b, c) = (rng.random_range(1..p), rng.random_range(0..p), rng.random_range(0..p));
    let d = f.mul(f.add(1, f.mul(b, c)), f.inv(a).expect("a is nonzero"));
    Mat2::new(a, b, c, d)
}

fn fricke_run(samples: usize, pmax: u64, seed: u64) -> Result<FrickeRecord> {
    let fields: Vec<PrimeField> = primes_in(5, pmax).into_iter().map(|p| PrimeField::new(p).unwrap()).collect();
    if fields.is_empty() {
        return Err(usage("--pmax must be at least 5"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rec = FrickeRecord { samples, failures: 0, on_cayley_cubic: 0, commuting_pairs: 0 };
    for _ in 0..samples {
        let f = &fields[rng.random_range(0..fields.len())];
        let (a, b) = (random_unimodular(f, &mut rng), random_unimodular(f, &mut rng));
        let r = fricke_check(f, a, b)?;
        rec.failures += usize::from(!r.holds());
        rec.on_cayley_cubic += usize::from(r.on_cayley_cubic());
        rec.commuting_pairs += usize::from(a.mul(&b, f) == b.mul(&a, f));
    }
    Ok(rec)
}

pub fn fricke_selftest(args: &FrickeArgs, format: Format, out: Option<&Path>) -> Result<()> {
    let rec = fricke_run(args.samples, args.pmax, args.seed)?;
    let failures = rec.failures;
    emit(&[rec], format, out)?;
    if failures > 0 {
        return Err(VerificationFailed(format!("{failures} pairs violate the trace identity")).into());
    }
    Ok(())
}

type Check = (&'static str, fn() -> Result<()>);

pub fn selftest() -> Result<()> {
    let checks: Vec<Check> = vec![
        ("counting formula, p <= 31", selftest::counting),
        ("p=7 k=2 components", selftest::p7_components),
        ("Cayley prediction vs enumeration, p <= 61", selftest::cayley),
        ("shifted square sums, p <= 101", selftest::shifted_sums),
        ("Fricke identity, 2000 pairs", || {
            let r = fricke_run(2000, 97, 7)?;
            if r.failures > 0 {
                bail!("{} failures", r.failures);
            }
            Ok(())
        }),
        ("linear action, 2000 cases", selftest::linear_action),
        ("Lanczos vs dense, p <= 31", selftest::lanczos),
    ];
    let mut failed = 0;
    for (name, check) in checks {
        match check() {
            Ok(()) => println!("PASS {name}"),
            Err(e) => {
                failed += 1;
                println!("FAIL {name}: {e:#}");
            }
        }
    }
    if failed > 0 {
        return Err(VerificationFailed(format!("{failed} self-checks failed")).into());
    }
    Ok(())
}

mod selftest {
    use super::*;
    use markoff_core::arith::shifted_square_sum;
    use markoff_core::cayley::{ExponentModel, ExponentPair};
    use markoff_core::graph::component_row;
    use markoff_core::spectral::full_spectrum;
    use markoff_core::surface::Move;

    pub fn counting() -> Result<()> {
        for p in primes_in(5, 31) {
            for k in 0..p as i64 {
                for a in 1..=3 {
                    let s = LevelSurface::new(p, k, a)?;
                    let (f, n) = (s.count_solutions_formula(), s.enumerate_solutions().len() as u64);
                    if f != n {
                        bail!("p={p} k={k} a={a}: {f} vs {n}");
                    }
                }
            }
        }
        Ok(())
    }

    pub fn p7_components() -> Result<()> {
        let full = component_row(7, 2, 3, GeneratorSet::MovesPermsSigns)?.component_sizes;
        let perms = component_row(7, 2, 3, GeneratorSet::MovesPerms)?.component_sizes;
        if full != [4, 6, 16, 24] || perms != [1, 3, 4, 6, 12, 24] {
            bail!("full {full:?}, perms {perms:?}");
        }
        Ok(())
    }

    pub fn cayley() -> Result<()> {
        for signs in [false, true] {
            for r in compare_orbits(&primes_in(5, 61), signs, 61)? {
                if r.matches() != Some(true) {
                    bail!("p={} signs={signs}", r.p);
                }
                if r.predicted.iter().sum::<u64>() != r.p * r.p + 1 {
                    bail!("p={} mass", r.p);
                }
            }
        }
        Ok(())
    }

    pub fn shifted_sums() -> Result<()> {
        for p in primes_in(5, 101) {
            if let Some(s) = (1..p).find(|&s| shifted_square_sum(s, p) != -1) {
                bail!("p={p} s={s}");
            }
        }
        Ok(())
    }

    pub fn linear_action() -> Result<()> {
        let models: Vec<ExponentModel> =
            primes_in(5, 97).into_iter().map(ExponentModel::new).collect::<Result<_, _>>()?;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..2000 {
            let model = &models[rng.random_range(0..models.len())];
            let n = model.order();
            let e = ExponentPair { u: rng.random_range(0..n), v: rng.random_range(0..n) };
            let m = Move::ALL[rng.random_range(0..Move::ALL.len())];
            if !model.check(e, m) {
                bail!("{e:?} {m}");
            }
        }
        Ok(())
    }

    pub fn lanczos() -> Result<()> {
        for p in primes_in(5, 31) {
            let g = dehn_graph(p, 0, 3)?;
            let dense = second_largest(&full_spectrum(&g)?).unwrap_or(f64::NAN);
            let l = lambda2(&g, 1e-10)?;
            if (l.value - dense).abs() > 1e-8 {
                bail!("p={p}: {} vs {dense}", l.value);
            }
        }
        Ok(())
    }
}
