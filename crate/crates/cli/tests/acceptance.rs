//! End-to-end acceptance checks; prints one PASS/FAIL line per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use nilvec_core::classify::jordan::jordan_chains;
use nilvec_core::classify::{classify, split_check, Case, Subcase, SplitVerdict};
use nilvec_core::exactlinalg::dense::{self, Subspace};
use nilvec_core::exactlinalg::generic_rank;
use nilvec_core::genlib::{build, random_spec, Recipe};
use nilvec_core::liealgebra::{close, SeriesKind};
use nilvec_core::parse::parse_field;
use nilvec_core::{Caps, CoordinateChange, ExpPoly, LieAlgebra, Rational, VariableContext, VectorField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const NONSPLIT_GENS: [&str; 4] = ["Dx", "y*Dx", "Dy + (x^2 + y^2)*Dz", "(x + y)*Dz"];
const NONSPLIT_BASIS: [&str; 8] = [
    "Dx",
    "y*Dx",
    "Dy + (x^2 + y^2)*Dz",
    "Dz",
    "x*Dz",
    "y*Dz",
    "x*y*Dz",
    "y^2*Dz",
];
const EXP_GENS: [&str; 3] = ["Dx", "y*Dx + x^2*exp(y)*Dz", "x*Dz"];
const EXP_BASIS: [&str; 8] = [
    "Dx",
    "y*Dx + x^2*exp(y)*Dz",
    "x*Dz",
    "Dz",
    "y*Dz",
    "x*exp(y)*Dz",
    "exp(y)*Dz",
    "y*exp(y)*Dz",
];
const HEISENBERG_GENS: [&str; 3] = ["Dx", "y*Dx + x*Dz", "Dz"];

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn f(s: &str) -> VectorField {
    parse_field(s, &VariableContext::xyz()).unwrap()
}

fn fields(spec: &[&str]) -> Vec<VectorField> {
    spec.iter().map(|s| f(s)).collect()
}

/// Everything the suites closed or projected, for the cross-cutting checks.
#[derive(Default)]
struct Record {
    algebras: Vec<LieAlgebra>,
    projections: Vec<(usize, Vec<usize>)>,
}

impl Record {
    fn keep(&mut self, l: &LieAlgebra) -> usize {
        self.algebras.push(l.clone());
        self.algebras.len() - 1
    }
}

fn same_span(l: &LieAlgebra, expected: &[&str]) -> Outcome {
    let want = fields(expected);
    let s = l.subspace_of(&want).map_err(|e| format!("expected basis element outside the closure: {e}"))?;
    ensure!(s.dim() == l.dim() && want.len() == l.dim(), "span differs: {} of {}", s.dim(), l.dim());
    Ok(())
}

fn nonsplit_closure(rec: &mut Record) -> Outcome {
    let start = Instant::now();
    let l = close(&fields(&NONSPLIT_GENS), Caps::default()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure!(l.dim() == 8, "dimension {}", l.dim());
    same_span(&l, &NONSPLIT_BASIS)?;
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    rec.keep(&l);
    Ok(())
}

fn nonsplit_certificate(rec: &mut Record) -> Outcome {
    let l = close(&fields(&NONSPLIT_GENS), Caps::default()).map_err(|e| e.to_string())?;
    let kernel = l.project(&[0, 1]).map_err(|e| e.to_string())?.kernel;
    let i = rec.keep(&l);
    rec.projections.push((i, vec![0, 1]));
    let SplitVerdict::NonSplit { certificate } = split_check(&l, &kernel).map_err(|e| e.to_string())? else {
        return Err("verdict is split".into());
    };
    let wanted = ["[a1,a3] coefficient of x*Dz", "[a2,a3] coefficient of x*y*Dz"];
    let conflict = certificate
        .conflicts
        .iter()
        .find(|c| c.rows.iter().map(|&r| certificate.rows[r].as_str()).eq(wanted))
        .ok_or("no conflict between the x*Dz row of [a1,a3] and the x*y*Dz row of [a2,a3]")?;
    let u = conflict.unknown.ok_or("conflict involves more than one unknown")?;
    ensure!(certificate.unknowns[u] == "coefficient of x*y*Dz in k1", "unknown {}", certificate.unknowns[u]);
    let mut values = conflict.values.clone();
    values.sort();
    ensure!(values == ["-2/1", "2/1"], "values {values:?}");
    // The Farkas combination certifies inconsistency of the whole system.
    let q = |s: &str| s.parse::<Rational>().unwrap();
    let y: Vec<Rational> = certificate.combination.iter().map(|s| q(s)).collect();
    let cols = certificate.unknowns.len();
    for c in 0..cols {
        let s: Rational = certificate.matrix.iter().zip(&y).map(|(row, yi)| q(&row[c]) * yi).sum();
        ensure!(s == Rational::from_integer(0.into()), "combination does not cancel column {c}");
    }
    let b: Rational = certificate.rhs.iter().zip(&y).map(|(r, yi)| q(r) * yi).sum();
    ensure!(b == Rational::from_integer(1.into()), "combination gives {b} on the right-hand side");
    Ok(())
}

fn exp_algebra(rec: &mut Record) -> Outcome {
    let l = close(&fields(&EXP_GENS), Caps::default()).map_err(|e| e.to_string())?;
    ensure!(l.dim() == 8, "dimension {}", l.dim());
    same_span(&l, &EXP_BASIS)?;
    let p = l.project(&[0, 1]).map_err(|e| e.to_string())?;
    let i = rec.keep(&l);
    rec.projections.push((i, vec![0, 1]));
    ensure!(p.image.dim() == 2, "image dimension {}", p.image.dim());
    let in_image = |s: &str| parse_field(s, p.image.ctx()).unwrap();
    let image = p.image.subspace_of(&[in_image("Dx"), in_image("y*Dx")]).map_err(|e| e.to_string())?;
    ensure!(image.dim() == 2, "image is not <Dx, y*Dx>");
    ensure!(p.kernel.dim() == 6, "kernel dimension {}", p.kernel.dim());
    let center = l.center();
    ensure!(center.len() == 4, "center dimension {}", center.len());
    ensure!(generic_rank(&center) == 1, "center rank {}", generic_rank(&center));
    for c in &center {
        let g = c.component(2);
        ensure!(
            c.component(0).is_zero() && c.component(1).is_zero() && !g.depends_on(0) && !g.depends_on(2),
            "center element {c} is not g(y)*Dz"
        );
    }
    ensure!(!split_check(&l, &p.kernel).map_err(|e| e.to_string())?.is_split(), "verdict is split");
    Ok(())
}

fn heisenberg(rec: &mut Record) -> Outcome {
    let l = close(&fields(&HEISENBERG_GENS), Caps::default()).map_err(|e| e.to_string())?;
    ensure!(l.dim() == 3, "dimension {}", l.dim());
    let dims = l.series(SeriesKind::LowerCentral).dims;
    ensure!(dims == [3, 1, 0], "lower central series {dims:?}");
    let case = classify(&l).map_err(|e| e.to_string())?.case;
    let want = Case::CenterDim1 {
        subcase: Some(Subcase::Heisenberg),
    };
    ensure!(case == want, "case {case:?}");
    rec.keep(&l);
    Ok(())
}

/// Kernel dimension of `ad(op)` restricted to `ideal`.
fn operator_kernel_dim(l: &LieAlgebra, op: &VectorField, ideal: &Subspace) -> usize {
    let ad = l.adjoint_matrix(op).unwrap();
    let images: Vec<_> = ideal.basis().iter().map(|b| dense::mat_vec(&ad, b)).collect();
    let columns: Vec<Vec<Rational>> = (0..l.dim()).map(|i| images.iter().map(|c| c[i].clone()).collect()).collect();
    dense::null_space(&columns, ideal.dim()).len()
}

fn two_block_suite(rec: &mut Record) -> Outcome {
    let start = Instant::now();
    for seed in 0..100 {
        let built = build(&random_spec(Recipe::TwoBlock, seed, 4).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let l = close(&built.generators, Caps::default()).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure!(l.is_nilpotent(), "seed {seed}: not nilpotent");
        let center = l.center();
        ensure!(center.len() == 2, "seed {seed}: center dimension {}", center.len());
        ensure!(generic_rank(&center) == 2, "seed {seed}: center rank {}", generic_rank(&center));
        let kernel = l.project(&[2]).map_err(|e| format!("seed {seed}: {e}"))?.kernel;
        let dz = f("Dz");
        let d = jordan_chains(&l, &dz, &kernel).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure!(d.chains.len() == 2, "seed {seed}: {} chains", d.chains.len());
        let k = operator_kernel_dim(&l, &dz, &kernel);
        ensure!(d.chains.len() == k, "seed {seed}: {} chains but kernel dimension {k}", d.chains.len());
        let i = rec.keep(&l);
        rec.projections.push((i, vec![2]));
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    Ok(())
}

fn single_chain_suite(rec: &mut Record) -> Outcome {
    for seed in 0..100 {
        let built = build(&random_spec(Recipe::SingleChain, seed, 3).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let l = close(&built.generators, Caps::default()).map_err(|e| format!("seed {seed}: {e}"))?;
        let kernel = l.project(&[0, 1]).map_err(|e| format!("seed {seed}: {e}"))?.kernel;
        let d = jordan_chains(&l, &f("Dx"), &kernel).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure!(d.chains.len() == 1, "seed {seed}: {} chains", d.chains.len());
        ensure!(l.center().len() == 1, "seed {seed}: center dimension {}", l.center().len());
        let i = rec.keep(&l);
        rec.projections.push((i, vec![0, 1]));
    }
    Ok(())
}

fn center_rank_bound(rec: &mut Record) -> Outcome {
    for seed in 0..200u64 {
        let recipe = Recipe::NONABELIAN[seed as usize % Recipe::NONABELIAN.len()];
        let spec = random_spec(recipe, seed, 1 + (seed % 3) as u32).map_err(|e| e.to_string())?;
        let built = build(&spec).map_err(|e| e.to_string())?;
        let l = close(&built.generators, Caps::default()).map_err(|e| format!("{recipe} seed {seed}: {e}"))?;
        ensure!(l.is_nilpotent() && !l.is_abelian(), "{recipe} seed {seed}: not nonabelian nilpotent");
        let r = generic_rank(&l.center());
        ensure!(r <= 2, "{recipe} seed {seed}: center rank {r}");
        let i = rec.keep(&l);
        if l.project(&[0, 1]).is_ok() {
            rec.projections.push((i, vec![0, 1]));
        }
    }
    Ok(())
}

fn projection_identity(rec: &Record) -> Outcome {
    ensure!(!rec.projections.is_empty(), "no projections recorded");
    for (i, kept) in &rec.projections {
        let l = &rec.algebras[*i];
        let p = l.project(kept).map_err(|e| e.to_string())?;
        ensure!(l.dim() == p.image.dim() + p.kernel.dim(), "algebra {i}: dimensions do not add up");
        ensure!(l.is_abelian_subspace(&p.kernel), "algebra {i}: kernel is not abelian");
        let brackets = l.bracket_subspaces(&Subspace::full(l.dim()), &p.kernel);
        ensure!(p.kernel.contains_subspace(&brackets), "algebra {i}: kernel is not an ideal");
    }
    Ok(())
}

fn random_polynomial(rng: &mut ChaCha8Rng, vars: &[usize], terms: usize, max_pow: u32) -> ExpPoly {
    let mut p = ExpPoly::zero();
    for _ in 0..terms {
        let mut m = ExpPoly::integer(rng.random_range(-3..=3));
        for &v in vars {
            m = m.mul(&ExpPoly::var(v).pow(rng.random_range(0..=max_pow)));
        }
        p = p.add(&m);
    }
    p
}

fn random_field(rng: &mut ChaCha8Rng) -> VectorField {
    let comps = (0..3).map(|_| random_polynomial(rng, &[0, 1, 2], 2, 2)).collect();
    VectorField::new(&VariableContext::xyz(), comps).unwrap()
}

/// `x' = x + A(y, z), y' = y + B(z), z' = z + t` with its inverse.
fn random_change(rng: &mut ChaCha8Rng) -> CoordinateChange {
    let ctx = VariableContext::xyz();
    let v = ExpPoly::var;
    let a = random_polynomial(rng, &[1, 2], 2, 1);
    let b = random_polynomial(rng, &[2], 2, 2);
    let t = ExpPoly::integer(rng.random_range(-3..=3));
    let z_old = v(2).sub(&t);
    let y_old = v(1).sub(&b.substitute(&[v(0), v(1), z_old.clone()]).unwrap());
    let x_old = v(0).sub(&a.substitute(&[v(0), y_old.clone(), z_old.clone()]).unwrap());
    CoordinateChange::new(&ctx, &ctx, vec![v(0).add(&a), v(1).add(&b), v(2).add(&t)], vec![x_old, y_old, z_old]).unwrap()
}

fn algebraic_invariants(rec: &Record) -> Outcome {
    for (i, l) in rec.algebras.iter().enumerate() {
        ensure!(l.check_antisymmetry(), "algebra {i}: structure is not antisymmetric");
        ensure!(l.check_jacobi(), "algebra {i}: Jacobi identity fails");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for case in 0..50 {
        let (v, w, phi) = (random_field(&mut rng), random_field(&mut rng), random_change(&mut rng));
        let push = |u: &VectorField| u.pushforward(&phi).unwrap();
        let lhs = push(&v.bracket(&w).unwrap());
        let rhs = push(&v).bracket(&push(&w)).unwrap();
        ensure!(lhs == rhs, "pushforward case {case} does not preserve the bracket");
    }
    for case in 0..20 {
        let n = rng.random_range(1..=3);
        let fs: Vec<VectorField> = (0..n).map(|_| random_field(&mut rng)).collect();
        let phi = random_change(&mut rng);
        let pushed: Vec<VectorField> = fs.iter().map(|u| u.pushforward(&phi).unwrap()).collect();
        ensure!(generic_rank(&fs) == generic_rank(&pushed), "rank changes under pushforward in case {case}");
    }
    Ok(())
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_nilvec")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn with_gens(cmd: &[&str], gens: &[&str]) -> Vec<String> {
    let mut v: Vec<String> = cmd.iter().map(|s| s.to_string()).collect();
    v.extend(["--format".into(), "json".into()]);
    for g in gens {
        v.extend(["--gen".into(), g.to_string()]);
    }
    v
}

fn collect_fields(v: &serde_json::Value, key: Option<&str>, out: &mut Vec<String>) {
    const FIELD_KEYS: [&str; 5] = ["basis", "center", "ideal", "generators", "bracket"];
    match v {
        serde_json::Value::Object(m) => m.iter().for_each(|(k, x)| collect_fields(x, Some(k), out)),
        serde_json::Value::Array(a) => a.iter().for_each(|x| collect_fields(x, key, out)),
        serde_json::Value::String(s) if key.is_some_and(|k| FIELD_KEYS.contains(&k)) => out.push(s.clone()),
        _ => {}
    }
}

fn cli_determinism(_: &mut Record) -> Outcome {
    let runs = [
        with_gens(&["closure"], &NONSPLIT_GENS),
        with_gens(&["split", "--ideal", "kernel", "--kept", "x,y"], &NONSPLIT_GENS),
        with_gens(&["closure"], &EXP_GENS),
        with_gens(&["project", "--kept", "x,y"], &EXP_GENS),
        with_gens(&["center"], &EXP_GENS),
        with_gens(&["split", "--ideal", "kernel"], &EXP_GENS),
        with_gens(&["closure"], &HEISENBERG_GENS),
        with_gens(&["series"], &HEISENBERG_GENS),
        with_gens(&["classify"], &HEISENBERG_GENS),
    ];
    let mut printed = Vec::new();
    for args in &runs {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code1, first) = run_cli(&args);
        let (code2, second) = run_cli(&args);
        ensure!(code1 == 0 && code2 == 0, "{args:?} exited with {code1}/{code2}");
        ensure!(first == second, "{args:?} output differs between runs");
        let json: serde_json::Value = serde_json::from_slice(&first).map_err(|e| e.to_string())?;
        collect_fields(&json, None, &mut printed);
    }
    ensure!(printed.len() > 30, "only {} field strings collected", printed.len());
    for s in &printed {
        let v = parse_field(s, &VariableContext::xyz()).map_err(|e| format!("{s}: {e}"))?;
        ensure!(v.to_string() == *s, "{s} prints back as {v}");
    }
    Ok(())
}

fn main() {
    let mut rec = Record::default();
    type Check = fn(&mut Record) -> Outcome;
    let criteria: [(&str, Check); 10] = [
        ("closure of {Dx, y*Dx, Dy+(x^2+y^2)*Dz, (x+y)*Dz} is the expected 8-dim algebra in < 1 s", nonsplit_closure),
        ("that algebra does not split over the projection kernel; one unknown is forced to 2 and -2", nonsplit_certificate),
        ("{Dx, y*Dx+x^2*exp(y)*Dz, x*Dz}: dim 8, image <Dx, y*Dx>, kernel 6, center g(y)*Dz of dim 4, non-split", exp_algebra),
        ("Heisenberg algebra: dim 3, lower central series 3,1,0, one-dimensional center case", heisenberg),
        ("100 two-block algebras: center dim and rank 2, two Jordan chains, in < 60 s", two_block_suite),
        ("100 single-chain algebras: one Jordan chain, one-dimensional center", single_chain_suite),
        ("200 nonabelian nilpotent algebras: center rank at most 2", center_rank_bound),
        ("every projection: dimensions add up, kernel is an abelian ideal", |r| projection_identity(r)),
        ("antisymmetry and Jacobi on all structure tables; pushforward keeps brackets and rank", |r| algebraic_invariants(r)),
        ("CLI JSON output is byte-identical across runs; printed fields parse back", cli_determinism),
    ];
    let mut failed = 0;
    for (n, (what, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(|| check(&mut rec)))
            .unwrap_or_else(|p| Err(p.downcast_ref::<String>().cloned().unwrap_or_else(|| "panic".into())));
        match outcome {
            Ok(()) => println!("criterion {}: PASS {what}", n + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL {what}: {e}", n + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
