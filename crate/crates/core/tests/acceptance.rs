use std::collections::BTreeMap;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use loopmult::galois::{FieldTower, GaloisContext};
use loopmult::gchar::{
    decompose_char, freudenthal_dimension, simple_char_char0, simple_char_sl2_modp, weyl_dimension,
    CharEngine, Character,
};
use loopmult::lchar::{decompose_lchar_K, simple_lchar_K, tp_lchar_K, weyl_lchar_K};
use loopmult::lweight::{class_product_count, relatively_prime, LWeight};
use loopmult::mult::{
    cg_K, cg_K_table, dim_simple_F, dim_simple_K, dim_weyl_F, tensor_K_irreducible, weyl_mult_K,
    weyl_mult_K_table, Method,
};
use loopmult::oracle::{random_dominant_lweight, verify_degree_suite, verify_lambda_suite};
use loopmult::rootsys::{LieType, Weight};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn a1() -> LieType {
    "A1".parse().unwrap()
}

/// Towers `(p, k, N)` over `F_2, F_3, F_4` small enough for exhaustive
/// orbit sums.
const TOWERS: [(u32, u32, u32); 7] = [(2, 1, 2), (2, 1, 3), (2, 1, 4), (3, 1, 1), (3, 1, 2), (2, 2, 1), (2, 2, 2)];

fn random_tower(rng: &mut StdRng) -> Arc<FieldTower> {
    let (p, k, n) = TOWERS[rng.gen_range(0..TOWERS.len())];
    FieldTower::new(p, k, n).unwrap()
}

fn random_member(rng: &mut StdRng, ctx: &GaloisContext, w: &LWeight) -> LWeight {
    let class = ctx.orbit(w).unwrap();
    class.members()[rng.gen_range(0..class.len())].clone()
}

fn deg_oracle() -> Outcome {
    let start = Instant::now();
    let report = verify_degree_suite(20261014, 240).map_err(fail)?;
    let elapsed = start.elapsed();
    if !report.passed() {
        return Err(format!("{} mismatches, first {}", report.failures.len(), report.failures[0]));
    }
    if report.cases < 200 || elapsed > Duration::from_secs(10) {
        return Err(format!("{} cases in {elapsed:?}", report.cases));
    }
    Ok(format!("{} ℓ-weights agree", report.cases))
}

fn eval_lweights() -> Outcome {
    let start = Instant::now();
    let report = verify_lambda_suite();
    let elapsed = start.elapsed();
    if !report.passed() {
        return Err(format!("{} mismatches, first {}", report.failures.len(), report.failures[0]));
    }
    if elapsed > Duration::from_secs(1) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("{} coefficients agree", report.cases))
}

fn flagship() -> Outcome {
    let t = a1();
    let tower = FieldTower::new(2, 1, 2).unwrap();
    let ctx = GaloisContext::finite_field(tower.clone());
    let e = CharEngine::new(t, 2).unwrap();
    let a = tower.generator();
    let varpi = LWeight::omega(t, &tower, Weight::new(&[1]), a).unwrap();
    let pi = LWeight::omega(t, &tower, Weight::new(&[1]), tower.mul(a, a)).unwrap();
    let prod = varpi.mul(&pi).unwrap();
    let double = LWeight::omega(t, &tower, Weight::new(&[2]), a).unwrap();
    let id = LWeight::identity(t, tower.key());
    let table = cg_K_table(&ctx, &e, &varpi, &pi).map_err(fail)?;
    for (w, expected) in [(&prod, 2), (&double, 1), (&id, 4)] {
        let single = cg_K(&ctx, &e, w, &varpi, &pi).map_err(fail)?.value;
        let rep = ctx.class_rep(w).unwrap();
        let in_table = table.get(&rep).map(|r| r.value).unwrap_or(0);
        if single != expected || in_table != expected {
            return Err(format!("{w}: expected {expected}, got {single} and {in_table}"));
        }
    }
    if table.len() != 3 {
        return Err(format!("{} constituents", table.len()));
    }
    let mut sum = 0;
    for (rep, r) in &table {
        sum += r.value * dim_simple_K(&ctx, &e, rep).map_err(fail)?;
    }
    let expected = dim_simple_K(&ctx, &e, &varpi).unwrap() * dim_simple_K(&ctx, &e, &pi).unwrap();
    if sum != 16 || expected != 16 {
        return Err(format!("dimension sum {sum}, product {expected}"));
    }
    Ok("2, 1, 4 and dimension sum 16".into())
}

fn class_count_case() -> Outcome {
    let mut rng = StdRng::seed_from_u64(4);
    let t = a1();
    for case in 0..100 {
        let tower = random_tower(&mut rng);
        let e = CharEngine::new(t, tower.p() as u64).unwrap();
        let ctx = if case % 4 == 3 {
            GaloisContext::synthetic(tower.clone(), rng.gen_range(2..=3)).unwrap()
        } else {
            GaloisContext::finite_field(tower.clone())
        };
        let varpi = random_dominant_lweight(&mut rng, t, &tower, 2, 2);
        let pi = random_dominant_lweight(&mut rng, t, &tower, 2, 2);
        let omega = random_member(&mut rng, &ctx, &varpi).mul(&random_member(&mut rng, &ctx, &pi)).unwrap();
        let report = cg_K(&ctx, &e, &omega, &varpi, &pi).map_err(fail)?;
        let ratio_num = ctx.indeg(&varpi).unwrap() * ctx.indeg(&pi).unwrap();
        let ratio_den = ctx.indeg(&omega).unwrap();
        let count = class_product_count(&ctx, &omega, &varpi, &pi).map_err(fail)?;
        if ratio_num * count % ratio_den != 0 || report.value != ratio_num * count / ratio_den {
            return Err(format!("case {case}: {omega} in {varpi} x {pi}: {} vs {ratio_num}/{ratio_den}*{count}", report.value));
        }
    }
    Ok("100 products of class members".into())
}

fn has_degree_check(r: &loopmult::mult::MultReport) -> bool {
    r.cross_checks
        .iter()
        .any(|c| c.method == Method::DegreeFormula && c.value == r.value)
}

fn weyl_case(rng: &mut StdRng, ctx: &GaloisContext, e: &CharEngine, omega: &LWeight) -> Outcome {
    let candidates: Vec<LWeight> = weyl_lchar_K(ctx, e, omega)
        .map_err(fail)?
        .terms()
        .keys()
        .filter(|w| w.is_dominant())
        .cloned()
        .collect();
    let varpi = &candidates[rng.gen_range(0..candidates.len())];
    let r = weyl_mult_K(ctx, e, omega, varpi).map_err(fail)?;
    if !has_degree_check(&r) {
        return Err(format!("{omega} at {varpi}: {r:?}"));
    }
    Ok(String::new())
}

fn dual_formula() -> Outcome {
    let mut rng = StdRng::seed_from_u64(5);
    let t = a1();
    for _ in 0..100 {
        let tower = random_tower(&mut rng);
        let e = CharEngine::new(t, tower.p() as u64).unwrap();
        let ctx = GaloisContext::finite_field(tower.clone());
        let omega = random_dominant_lweight(&mut rng, t, &tower, 2, 3);
        weyl_case(&mut rng, &ctx, &e, &omega)?;
    }
    let a2: LieType = "A2".parse().unwrap();
    for case in 0..50 {
        let tower = random_tower(&mut rng);
        let (lt, e) = if case % 5 == 4 {
            (a2, CharEngine::char0(a2))
        } else {
            (t, CharEngine::new(t, tower.p() as u64).unwrap())
        };
        let omega = random_dominant_lweight(&mut rng, lt, &tower, 2, 2);
        let ctx = if case % 2 == 0 {
            GaloisContext::synthetic(tower.clone(), rng.gen_range(2..=3)).unwrap()
        } else {
            let base = GaloisContext::synthetic(tower.clone(), rng.gen_range(2..=3)).unwrap();
            base.with_indeg(&omega, 6).unwrap()
        };
        weyl_case(&mut rng, &ctx, &e, &omega)?;
    }

    let tower = FieldTower::new(2, 1, 2).unwrap();
    let ctx = GaloisContext::finite_field(tower.clone());
    let e = CharEngine::new(t, 2).unwrap();
    let omega = LWeight::omega(t, &tower, Weight::new(&[2]), tower.generator()).unwrap();
    let id = LWeight::identity(t, tower.key());
    let r = weyl_mult_K(&ctx, &e, &omega, &id).map_err(fail)?;
    if r.value != 4 || !has_degree_check(&r) {
        return Err(format!("identity in W_K(ω_{{2,a}}): {r:?}"));
    }
    let mut sum = 0;
    for (rep, r) in weyl_mult_K_table(&ctx, &e, &omega).map_err(fail)? {
        sum += r.value * dim_simple_K(&ctx, &e, &rep).unwrap();
    }
    let expected = ctx.deg(&omega).unwrap() * dim_weyl_F(&e, &omega).unwrap();
    if sum != 8 || expected != 8 {
        return Err(format!("dimension sum {sum}, expected {expected}"));
    }
    Ok("150 random cases, worked case 4 and 8".into())
}

fn masses() -> Outcome {
    let mut rng = StdRng::seed_from_u64(6);
    let a2: LieType = "A2".parse().unwrap();
    for case in 0..100 {
        let tower = random_tower(&mut rng);
        let (t, e, ctx) = if case % 5 == 4 {
            let ctx = GaloisContext::synthetic(tower.clone(), rng.gen_range(1..=3)).unwrap();
            (a2, CharEngine::char0(a2), ctx)
        } else {
            let e = CharEngine::new(a1(), tower.p() as u64).unwrap();
            (a1(), e, GaloisContext::finite_field(tower.clone()))
        };
        let omega = random_dominant_lweight(&mut rng, t, &tower, 3, 2);
        let deg = ctx.deg(&omega).unwrap() as i64;
        let simple = simple_lchar_K(&ctx, &e, &omega).map_err(fail)?.mass();
        let weyl = weyl_lchar_K(&ctx, &e, &omega).map_err(fail)?.mass();
        let dv = dim_simple_F(&e, &omega).unwrap() as i64;
        let dw = dim_weyl_F(&e, &omega).unwrap() as i64;
        if simple != deg * dv || weyl != deg * dw {
            return Err(format!("{omega}: masses {simple}, {weyl}; deg {deg}, dims {dv}, {dw}"));
        }
    }
    Ok("100 simple and Weyl masses".into())
}

fn tp_consistency() -> Outcome {
    let mut rng = StdRng::seed_from_u64(7);
    let t = a1();
    let mut constituents = 0;
    for case in 0..30 {
        let tower = random_tower(&mut rng);
        let e = CharEngine::new(t, tower.p() as u64).unwrap();
        let ctx = GaloisContext::finite_field(tower.clone());
        let varpi = random_dominant_lweight(&mut rng, t, &tower, 2, 2);
        let pi = random_dominant_lweight(&mut rng, t, &tower, 2, 2);
        let tp = tp_lchar_K(&ctx, &e, &varpi, &pi).map_err(fail)?;
        let decomposition = decompose_lchar_K(&ctx, &e, &tp).map_err(fail)?;
        for rep in tp.terms().keys().filter(|w| w.is_dominant()) {
            let direct = cg_K(&ctx, &e, rep, &varpi, &pi).map_err(fail)?.value;
            let via = decomposition.get(rep).copied().unwrap_or(0);
            if direct != via {
                return Err(format!("case {case}: {rep} in {varpi} x {pi}: {direct} vs {via}"));
            }
            constituents += usize::from(direct > 0);
        }
    }
    Ok(format!("30 tensor products, {constituents} constituents"))
}

fn irreducibility() -> Outcome {
    let mut rng = StdRng::seed_from_u64(8);
    let t = a1();
    let mut found = 0;
    let mut tries = 0;
    while found < 50 {
        tries += 1;
        if tries > 20000 {
            return Err(format!("only {found} qualifying pairs"));
        }
        let tower = random_tower(&mut rng);
        let e = CharEngine::new(t, tower.p() as u64).unwrap();
        let ctx = GaloisContext::finite_field(tower.clone());
        let varpi = random_dominant_lweight(&mut rng, t, &tower, 2, 2);
        let pi = random_dominant_lweight(&mut rng, t, &tower, 2, 2);
        if !relatively_prime(&varpi, &pi) {
            continue;
        }
        let prod = varpi.mul(&pi).unwrap();
        if ctx.deg(&prod).unwrap() != ctx.deg(&varpi).unwrap() * ctx.deg(&pi).unwrap() {
            continue;
        }
        if !tensor_K_irreducible(&ctx, &e, &varpi, &pi).map_err(fail)? {
            return Err(format!("{varpi} x {pi} not recognised as simple"));
        }
        found += 1;
        let dv = dim_simple_K(&ctx, &e, &varpi).unwrap();
        let dp = dim_simple_K(&ctx, &e, &pi).unwrap();
        let dprod = dim_simple_K(&ctx, &e, &prod).unwrap();
        let m = cg_K(&ctx, &e, &prod, &varpi, &pi).map_err(fail)?.value;
        if dv * dp != dprod || m * dprod != dv * dp {
            return Err(format!("{varpi} x {pi}: dims {dv} {dp} {dprod}, mult {m}"));
        }
    }
    Ok(format!("50 pairs from {tries} samples"))
}

fn all_weights(rank: usize, max: i32) -> Vec<Weight> {
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i32>| {
                (0..=max).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out.iter().map(|c| Weight::new(c)).collect()
}

fn g_engines() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for t in LieType::all_up_to_rank(4) {
        let rs = t.root_system();
        for lambda in all_weights(t.rank(), 3) {
            let f = freudenthal_dimension(t, &lambda).map_err(fail)?;
            let w = weyl_dimension(&rs, &lambda);
            if f != w {
                return Err(format!("{t} {lambda}: Freudenthal {f}, Weyl {w}"));
            }
            checked += 1;
        }
    }
    let mut rng = StdRng::seed_from_u64(9);
    let types: Vec<LieType> = ["A1", "A2", "B2", "G2", "A3"].iter().map(|s| s.parse().unwrap()).collect();
    for case in 0..100 {
        let t = types[case % types.len()];
        let e = CharEngine::char0(t);
        let mut expected = BTreeMap::new();
        let mut chi = Character::zero(t);
        for _ in 0..rng.gen_range(1..=4) {
            let coords: Vec<i32> = (0..t.rank()).map(|_| rng.gen_range(0..=2)).collect();
            let lambda = Weight::new(&coords);
            let c = rng.gen_range(1..=3);
            chi.add_scaled(&simple_char_char0(t, &lambda).unwrap(), c as i64).unwrap();
            *expected.entry(lambda).or_insert(0u64) += c;
        }
        if decompose_char(&e, &chi).map_err(fail)? != expected {
            return Err(format!("round trip failed for {t} {expected:?}"));
        }
    }
    for p in [2u64, 3, 5] {
        for m in 0..=30u64 {
            let mut digits = m;
            let mut prod = 1;
            while digits > 0 {
                prod *= digits % p + 1;
                digits /= p;
            }
            let d = simple_char_sl2_modp(m, p).dim();
            if d != prod as i64 {
                return Err(format!("L({m}) in char {p}: {d} vs {prod}"));
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(60) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("{checked} dimensions, 100 round trips, 93 Steinberg dimensions"))
}

const DETERMINISM_COMMANDS: &[&[&str]] = &[
    &["cg", "--type", "A1", "--field", "2^1", "--ambient", "2", "--char", "p", "--w", "[(1+g*u)]", "--p", "[(1+g^2*u)]"],
    &["cg", "--field", "2^1", "--ambient", "2", "--w", "[(1+g*u)]", "--p", "[(1+g^2*u)]", "--format", "text"],
    &["cg", "--field", "3", "--ambient", "2", "--w", "[(1+g*u)^2]", "--p", "[1+u]", "--over", "F"],
    &["lchar", "--field", "2^2", "--ambient", "2", "--lw", "[(1+g*u)(1+u)]"],
    &["lchar", "--field", "2", "--lw", "[(1+u)^2]", "--module", "weyl", "--format", "text"],
    &["weyl-mult", "--field", "2^1", "--ambient", "2", "--lw", "[(1+g*u)^2]"],
    &["weyl-mult", "--field", "3", "--lw", "[1+u+u^2]", "--over", "F", "--format", "text"],
    &["orbit", "--field", "2^1", "--ambient", "2", "--lw", "[(1+g*u)]"],
    &["irreducible", "--field", "2", "--ambient", "3", "--w", "[1+g*u]", "--p", "[1+u]"],
    &["decompose", "--type", "B2", "--tensor", "[1,1]", "[0,1]"],
    &["decompose", "--char", "2", "--tensor", "[3]", "[2]", "--format", "text"],
    &["verify", "--suite", "lambda"],
    &["verify", "--suite", "degree", "--count", "30"],
];

fn run_cli(args: &[&str], threads: Option<&str>) -> Result<Vec<u8>, String> {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_loopmult"));
    cmd.args(args);
    if let Some(n) = threads {
        cmd.args(["--threads", n]);
    }
    let out = cmd.output().map_err(fail)?;
    if !out.status.success() {
        return Err(format!("{args:?} exited {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
    }
    Ok(out.stdout)
}

fn determinism() -> Outcome {
    for args in DETERMINISM_COMMANDS {
        let reference = run_cli(args, None)?;
        for threads in [None, None, Some("1"), Some("8")] {
            if run_cli(args, threads)? != reference {
                return Err(format!("{args:?} differs with threads {threads:?}"));
            }
        }
    }
    Ok(format!("{} commands, 3 runs plus 1 and 8 threads", DETERMINISM_COMMANDS.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("degree via orbits matches field generation", deg_oracle),
        ("evaluation ℓ-weights match the explicit Λ-action", eval_lweights),
        ("flagship Clebsch-Gordan table over F_2", flagship),
        ("class product count at top weight", class_count_case),
        ("Weyl multiplicity formulas agree", dual_formula),
        ("ℓ-character masses", masses),
        ("tensor ℓ-character decomposition matches cg", tp_consistency),
        ("irreducibility criterion", irreducibility),
        ("g-character engines", g_engines),
        ("CLI output is deterministic", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({elapsed:.2}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} ({elapsed:.2}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
