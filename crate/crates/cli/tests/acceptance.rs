//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. All comparisons are exact; the only tolerances are wall-clock.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use relsmooth::{run, Options};
use relsmooth_core::fdrel::{enveloping_pair, random_module, rel_bar_complex, rel_tor, RelResolution, DEFAULT_CHAIN_LIMIT};
use relsmooth_core::linalg::{unit_vector, EchelonSpan, Vector};
use relsmooth_core::*;
use serde_json::Value;

/// Per-criterion wall-clock limit.
const CRITERION_LIMIT: Duration = Duration::from_secs(30);
/// Relative HH of the dual numbers up to degree 4.
const RELHH_LIMIT: Duration = Duration::from_secs(10);
const RANDOM_MODULES: usize = 20;
const MAX_MODULE_DIM: usize = 4;
const PD_CUTOFF: usize = 6;
const TOR_CUTOFF: usize = 5;
const SEED: u64 = 2024;

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name)
}

fn run_corpus(name: &str) -> Result<Vec<Value>, String> {
    let text = std::fs::read_to_string(corpus(name)).map_err(|e| e.to_string())?;
    let report = run(&text, &Options::default()).map_err(|e| e.to_string())?;
    if let Some(bad) = report.results.iter().find(|r| r["ok"] != Value::Bool(true)) {
        return Err(format!("{name}: {}", bad["error"]));
    }
    Ok(report.results)
}

/// Result object of the statement printed exactly as `stmt`.
fn result<'a>(results: &'a [Value], stmt: &str) -> Result<&'a Value, String> {
    results
        .iter()
        .find(|r| r["statement"] == stmt)
        .map(|r| &r["result"])
        .ok_or_else(|| format!("no result for `{stmt}`"))
}

fn ext(v: &Value) -> Result<ExtendedNat, String> {
    let n = || v["value"].as_u64().ok_or_else(|| format!("bad value in {v}"));
    match v["tag"].as_str() {
        Some("finite") => Ok(ExtendedNat::Finite(n()?)),
        Some("at_least") => Ok(ExtendedNat::AtLeast(n()?)),
        Some("infinite") => Ok(ExtendedNat::Infinite),
        _ => Err(format!("not an extended natural: {v}")),
    }
}

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn q() -> Field {
    Field::Rational
}

fn fd(pres: PresentedAlgebra) -> FDAlgebra {
    fd_from_presentation(&pres).expect("zero-dimensional").algebra
}

fn dual_numbers() -> FDAlgebra {
    fd(PresentedAlgebra::quotient(q(), &["x"], |r| vec![Poly::var(r, 0).pow(2).unwrap()], &Budget::default()).unwrap())
}

fn split_pair() -> FDAlgebra {
    let k = PresentedAlgebra::ground(q());
    fd(PresentedAlgebra::product(&[&k, &k]).unwrap())
}

fn x_squared_minus_one() -> FDAlgebra {
    fd(PresentedAlgebra::quotient(q(), &["x"], |r| vec![&Poly::var(r, 0).pow(2).unwrap() - &Poly::one(r)], &Budget::default()).unwrap())
}

fn mat(rows: &[&[i64]]) -> Matrix {
    Matrix::from_rows(&q(), rows[0].len(), rows.iter().map(|r| r.iter().map(|&x| q().from_i64(x)).collect()).collect())
}

/// Hochschild homology of `k[x]/(x^2)` from its 2-periodic resolution over
/// `A^e`; after tensoring with `A` the boundaries alternate 0 and 2x.
fn periodic_hh_oracle(top: usize) -> Vec<usize> {
    let zero = mat(&[&[0, 0], &[0, 0]]);
    let two_x = mat(&[&[0, 0], &[2, 0]]);
    let d = |p: usize| if p % 2 == 1 { zero.clone() } else { two_x.clone() };
    (0..=top).map(|p| 2 - if p == 0 { 0 } else { d(p).rank() } - d(p + 1).rank()).collect()
}

/// Absolute `Tor^R_i(N, M)` for `i ≤ top` from a free resolution of `M`
/// built here: cover by `R^r`, take the kernel, repeat.
fn free_tor_oracle(r: &FDAlgebra, right: &FDModule, m: &FDModule, top: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let f = r.field().clone();
    let n = r.dim();
    // Current kernel: its action matrices, and the last differential
    // F_i → F_{i-1} written on generator slots as elements of R.
    let mut actions: Vec<Matrix> = m.actions().to_vec();
    let mut dim = m.dim();
    let mut ranks = Vec::new();
    let mut diffs: Vec<Vec<Vec<Vector>>> = Vec::new();
    let mut embed: Option<Matrix> = None;
    for _ in 0..=top + 1 {
        // Random generators: over a semisimple algebra these are minimal
        // with high probability, which keeps the free modules small.
        let mut span = EchelonSpan::new();
        let mut gens = Vec::new();
        while span.dim() < dim {
            let v: Vector = (0..dim).map(|_| f.from_i64(rng.gen_range(-3..=3))).collect();
            if span.contains(&v) {
                continue;
            }
            for a in &actions {
                span.insert(&a.apply(&v));
            }
            gens.push(v);
        }
        let rk = gens.len();
        let cols: Vec<Vector> = (0..rk * n).map(|idx| actions[idx % n].apply(&gens[idx / n])).collect();
        let phi = Matrix::from_columns(&f, dim, &cols);
        // Differential F_i → F_{i-1}: generator g ↦ its image in F_{i-1}.
        if let Some(e) = &embed {
            let images: Vec<Vec<Vector>> = gens
                .iter()
                .map(|g| {
                    let w = e.apply(g);
                    w.chunks(n).map(|c| c.to_vec()).collect()
                })
                .collect();
            diffs.push(images);
        }
        ranks.push(rk);
        let kernel = phi.nullspace();
        let iota = Matrix::from_columns(&f, rk * n, &kernel);
        let free_actions: Vec<Matrix> = (0..n)
            .map(|k| {
                let l = r.left_mult(&unit_vector(&f, n, k));
                let mut big = Matrix::zeros(&f, rk * n, rk * n);
                for i in 0..rk {
                    for x in 0..n {
                        for y in 0..n {
                            big.set(i * n + x, i * n + y, l.get(x, y).clone());
                        }
                    }
                }
                big
            })
            .collect();
        actions = free_actions.iter().map(|a| iota.solve_matrix(&a.mul(&iota)).unwrap()).collect();
        dim = kernel.len();
        embed = Some(iota);
        if dim == 0 {
            break;
        }
    }
    // N ⊗_R F_i = N^{r_i}; the tensored boundary applies the right action.
    let nd = right.dim();
    let boundary = |i: usize| -> Option<Matrix> {
        let d = diffs.get(i - 1)?;
        let (src, tgt) = (ranks[i], ranks[i - 1]);
        let mut big = Matrix::zeros(&f, tgt * nd, src * nd);
        for (j, image) in d.iter().enumerate() {
            for (t, a) in image.iter().enumerate() {
                let act = right.act(a);
                for x in 0..nd {
                    for y in 0..nd {
                        big.set(t * nd + x, j * nd + y, act.get(x, y).clone());
                    }
                }
            }
        }
        Some(big)
    };
    (0..=top)
        .map(|i| {
            let size = ranks.get(i).map_or(0, |r| r * nd);
            let out = if i == 0 { 0 } else { boundary(i).map_or(0, |b| b.rank()) };
            let inc = boundary(i + 1).map_or(0, |b| b.rank());
            size - out - inc
        })
        .collect()
}

/// Resolutions collected for the invariant check.
#[derive(Default)]
struct Built {
    resolutions: Vec<(String, RelResolution)>,
}

fn criterion_1() -> Result<String, String> {
    let r = run_corpus("etale.rsm")?;
    let s = result(&r, "check smooth f")?;
    expect("smooth", &s["smooth"], &Value::Bool(true))?;
    expect("omega_zero", &s["omega_zero"], &Value::Bool(true))?;
    expect("rel_gldim", ext(&result(&r, "compute relgldim f")?["rel_gldim"])?, ExtendedNat::Finite(0))?;
    Ok("smooth, Ω = 0, rel_gldim = 0".into())
}

fn criterion_2() -> Result<String, String> {
    let r = run_corpus("pseudoreflection.rsm")?;
    expect("smooth", &result(&r, "check smooth f")?["smooth"], &Value::Bool(false))?;
    expect("rel_gldim", ext(&result(&r, "compute relgldim f")?["rel_gldim"])?, ExtendedNat::Infinite)?;
    Ok("not smooth, rel_gldim = inf".into())
}

fn criterion_3() -> Result<String, String> {
    let r = run_corpus("projection.rsm")?;
    expect("rel_gldim", ext(&result(&r, "compute relgldim f")?["rel_gldim"])?, ExtendedNat::Finite(1))?;
    expect("fiber at 0", ext(&result(&r, "compute fibergldim f at (0)")?["fiber_gldim"])?, ExtendedNat::Finite(1))?;
    Ok("rel_gldim = 1, fiber_gldim(y = 0) = 1".into())
}

fn criterion_4() -> Result<String, String> {
    let r = run_corpus("product.rsm")?;
    expect("smooth", &result(&r, "check smooth f")?["smooth"], &Value::Bool(true))?;
    expect("rel_gldim", ext(&result(&r, "compute relgldim f")?["rel_gldim"])?, ExtendedNat::Finite(0))?;
    let fib = result(&r, "compute fibergldim f at (0)")?;
    expect("fiber at 0", fib["fiber"].clone(), serde_json::json!(["Q[x]/(x)"]))?;
    expect("fiber_gldim at 0", ext(&fib["fiber_gldim"])?, ExtendedNat::Finite(0))?;
    // The same fiber from the library: one component, from the k[x] factor, equal to Q.
    let budget = Budget::default();
    let b = PresentedAlgebra::quotient(q(), &["t"], |_| vec![], &budget).unwrap();
    let a1 = PresentedAlgebra::quotient(q(), &["t", "u"], |r| vec![&(&Poly::var(r, 0) * &Poly::var(r, 1)) - &Poly::one(r)], &budget).unwrap();
    let a2 = PresentedAlgebra::quotient(q(), &["x"], |_| vec![], &budget).unwrap();
    let a = PresentedAlgebra::product(&[&a1, &a2]).unwrap();
    let routing = vec![
        relsmooth_core::algebra::ComponentImage { source: 0, images: vec![Poly::var(a.component(0).ring(), 0)] },
        relsmooth_core::algebra::ComponentImage { source: 0, images: vec![Poly::var(a.component(1).ring(), 0)] },
    ];
    let f = RingMap::new(b, a, routing).map_err(|e| e.to_string())?;
    let fiber = fiber_algebra(&f, &FiberPoint { component: 0, coords: vec![q().zero()] }, &budget).map_err(|e| e.to_string())?;
    expect("fiber components", fiber.components().len(), 1)?;
    expect("fiber variables", fiber.component(0).ring().vars().to_vec(), vec!["x".to_string()])?;
    expect("fiber dimension over Q", fiber.component(0).basis().standard_monomials().map(|s| s.len()), Some(1))?;
    Ok("smooth, rel_gldim = 0, fiber over t = 0 is Q from the second factor".into())
}

fn criterion_5() -> Result<String, String> {
    let r = run_corpus("tensor.rsm")?;
    let triple = |stmt: &str| -> Result<(ExtendedNat, ExtendedNat, ExtendedNat, bool), String> {
        let t = result(&r, stmt)?;
        Ok((ext(&t["left"])?, ext(&t["right"])?, ext(&t["product"])?, t["additive"] == Value::Bool(true)))
    };
    use ExtendedNat::Finite;
    expect("affine lines", triple("compute tensorcheck f g")?, (Finite(1), Finite(1), Finite(2), true))?;
    expect("étale pair", triple("compute tensorcheck e h")?, (Finite(0), Finite(0), Finite(0), true))?;
    Ok("(1, 1, 2) additive; (0, 0, 0) additive".into())
}

fn criterion_6() -> Result<String, String> {
    let r = run_corpus("cusp.rsm")?;
    let total = ext(&result(&r, "compute relgldim f")?["rel_gldim"])?;
    expect("rel_gldim", total, ExtendedNat::Infinite)?;
    let fiber = |t: i64| -> Result<ExtendedNat, String> { ext(&result(&r, &format!("compute fibergldim f at ({t})"))?["fiber_gldim"]) };
    expect("fiber at t = 1", fiber(1)?, ExtendedNat::Finite(0))?;
    expect("fiber at t = 0", fiber(0)?, ExtendedNat::Infinite)?;
    for t in [0, 1, 4] {
        if !fiber(t)?.le_join(total) {
            return Err(format!("fiber at t = {t} exceeds the total"));
        }
    }
    Ok("fibers 0 (t = 1) and inf (t = 0), total inf, fiber <= total".into())
}

fn criterion_7(built: &mut Built) -> Result<String, String> {
    // Each pair with one simple module (a cyclic quotient) joining the battery.
    let pairs = [
        ("Q[x]/(x^2) | Q", dual_numbers(), [0, 1]),
        ("Q x Q | Q", split_pair(), [0, 1]),
        ("Q[x]/(x^2 - 1) | Q", x_squared_minus_one(), [-1, 1]),
    ];
    let mut summary = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for (name, a, kill) in pairs {
        let b = FDSubalgebra::scalars(&a);
        let env = enveloping_pair(&b).map_err(|e| e.to_string())?;
        let cres = standard_resolution(&env.subalgebra, &env.module, PD_CUTOFF);
        let cdim = cres.pd();
        expect("cdim agrees with cdim_fd", cdim, cdim_fd(&b, PD_CUTOFF).map_err(|e| e.to_string())?)?;
        built.resolutions.push((format!("cdim {name}"), cres));
        let simple = FDModule::cyclic_quotient(&a, &[kill.iter().map(|&c| q().from_i64(c)).collect()]);
        let mut battery: Vec<FDModule> = (0..RANDOM_MODULES).map(|_| random_module(&a, MAX_MODULE_DIM, &mut rng)).collect();
        battery.push(simple);
        let mut max = ExtendedNat::Finite(0);
        for (i, m) in battery.iter().enumerate() {
            let res = standard_resolution(&b, m, PD_CUTOFF);
            max = max.join(res.pd());
            built.resolutions.push((format!("{name} module {i}"), res));
        }
        if !max.le_join(cdim) {
            return Err(format!("{name}: max rel_pd {max} exceeds cdim {cdim}"));
        }
        summary.push(format!("{name}: {max} <= {cdim}"));
    }
    Ok(summary.join("; "))
}

fn criterion_8() -> Result<String, String> {
    let split = split_pair();
    let hh = rel_bar_homology(&FDSubalgebra::scalars(&split), 4, DEFAULT_CHAIN_LIMIT).map_err(|e| e.to_string())?;
    expect("Q x Q degrees 1..4", hh[1..].to_vec(), vec![0; 4])?;
    let oracle = periodic_hh_oracle(4);
    let dual = dual_numbers();
    let start = Instant::now();
    let hh = rel_bar_homology(&FDSubalgebra::scalars(&dual), 4, DEFAULT_CHAIN_LIMIT).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    expect("oracle", oracle.clone(), vec![2, 1, 1, 1, 1])?;
    expect("dual numbers against oracle", hh, oracle)?;
    if took > RELHH_LIMIT {
        return Err(format!("degree 4 took {took:?}, limit {RELHH_LIMIT:?}"));
    }
    for (name, a) in [("Q x Q", &split), ("dual numbers", &dual)] {
        let c = rel_bar_complex(&FDSubalgebra::scalars(a), 5, DEFAULT_CHAIN_LIMIT).map_err(|e| e.to_string())?;
        if !c.is_complex() {
            return Err(format!("bar complex of {name} has b^2 != 0"));
        }
    }
    Ok(format!("Q x Q vanishes in 1..4; dual numbers (2,1,1,1,1) = oracle in {:.0?}", took))
}

fn criterion_9(built: &mut Built) -> Result<String, String> {
    let a = split_pair();
    let env = enveloping_pair(&FDSubalgebra::scalars(&a)).map_err(|e| e.to_string())?;
    let r = &env.algebra;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let mut modules = vec![env.module.clone(), FDModule::regular(r)];
    modules.extend((0..6).map(|_| random_module(r, MAX_MODULE_DIM, &mut rng)));
    let mut checked = 0;
    for (i, m) in modules.iter().enumerate() {
        let rel = rel_tor(&env.subalgebra, &env.module, m, TOR_CUTOFF, TOR_CUTOFF);
        built.resolutions.push((format!("rel tor module {i}"), standard_resolution(&env.subalgebra, m, TOR_CUTOFF)));
        let vanishes = rel.degrees[1..].iter().all(|d| d.dim == Some(0));
        if !vanishes {
            continue;
        }
        checked += 1;
        // Absolute Tor twice: the induced resolution over k, and free
        // resolutions built in this file.
        let k = FDSubalgebra::scalars(r);
        let over_k: Vec<Option<usize>> = rel_tor(&k, &env.module, m, TOR_CUTOFF, TOR_CUTOFF).degrees.iter().map(|d| d.dim).collect();
        let free = free_tor_oracle(r, &env.module, m, TOR_CUTOFF, &mut rng);
        if free[1..].iter().any(|&d| d != 0) || over_k[1..].iter().any(|d| *d != Some(0)) {
            return Err(format!("module {i}: absolute Tor {free:?} / {over_k:?} does not vanish"));
        }
        expect("Tor_0 agrees", Some(free[0]), rel.degrees[0].dim)?;
        built.resolutions.push((format!("abs tor module {i}"), standard_resolution(&k, m, TOR_CUTOFF)));
    }
    if checked == 0 {
        return Err("relative Tor never vanished".into());
    }
    Ok(format!("{checked}/{} modules: relative and absolute Tor vanish in 1..{TOR_CUTOFF}", modules.len()))
}

fn criterion_10(built: &Built) -> Result<String, String> {
    for (name, res) in &built.resolutions {
        if !res.is_complex() {
            return Err(format!("{name}: f∘f != 0"));
        }
        if !res.is_contracted() {
            return Err(format!("{name}: homotopy identity fails"));
        }
    }
    Ok(format!("{} resolutions", built.resolutions.len()))
}

fn criterion_11() -> Result<String, String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let mut names: Vec<PathBuf> = std::fs::read_dir(&dir)
        .map_err(|e| e.to_string())?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "rsm"))
        .collect();
    names.sort();
    let render = || -> Result<Vec<String>, String> {
        names
            .iter()
            .map(|p| {
                let text = std::fs::read_to_string(p).map_err(|e| e.to_string())?;
                Ok(run(&text, &Options::default()).map_err(|e| e.to_string())?.to_json_string())
            })
            .collect()
    };
    let (first, second) = (render()?, render()?);
    for (p, (x, y)) in names.iter().zip(first.iter().zip(&second)) {
        if x != y {
            return Err(format!("{} differs between runs", p.display()));
        }
    }
    Ok(format!("{} scripts byte-identical", names.len()))
}

fn main() -> ExitCode {
    let mut built = Built::default();
    let mut failures = 0;
    let mut report = |n: usize, title: &str, outcome: Result<String, String>, took: Duration| {
        let outcome = match outcome {
            Ok(_) if took > CRITERION_LIMIT => Err(format!("took {took:?}, limit {CRITERION_LIMIT:?}")),
            o => o,
        };
        match outcome {
            Ok(detail) => println!("PASS {n:>2} {title}: {detail} [{took:.1?}]"),
            Err(why) => {
                failures += 1;
                println!("FAIL {n:>2} {title}: {why} [{took:.1?}]");
            }
        }
    };
    macro_rules! criterion {
        ($n:expr, $title:expr, $body:expr) => {{
            let start = Instant::now();
            let outcome = $body;
            report($n, $title, outcome, start.elapsed());
        }};
    }
    criterion!(1, "étale extension", criterion_1());
    criterion!(2, "pseudoreflection", criterion_2());
    criterion!(3, "projection", criterion_3());
    criterion!(4, "product extension", criterion_4());
    criterion!(5, "tensor additivity", criterion_5());
    criterion!(6, "fiber lower bound", criterion_6());
    criterion!(7, "rel_pd <= cdim", criterion_7(&mut built));
    criterion!(8, "relative Hochschild homology", criterion_8());
    criterion!(9, "relative Tor vanishing implies absolute", criterion_9(&mut built));
    criterion!(10, "resolution invariants", criterion_10(&built));
    criterion!(11, "deterministic reports", criterion_11());
    if failures == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} criteria failed");
        ExitCode::FAILURE
    }
}
