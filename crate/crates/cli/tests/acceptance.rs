//! Acceptance suite: one PASS/FAIL line per criterion; exits nonzero when
//! any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use wdtk_core::families::battery::{battery, constructed_cases, fixtures, BatteryCase};
use wdtk_core::families::{specialize, sweep, theorem_c_harness, Domain, Family, MemberStatus, PseudoTrace, SpecializationMap};
use wdtk_core::localfield::{fixed_space, invariants_dim_of, swan_exponent, swan_exponent_integral, LocalFieldData, RamificationDatum, WeilMonomial};
use wdtk_core::scalars::{rat, Cyclo, LaurentPoly, Matrix, Rational, Scalar};
use wdtk_core::wdrep::{
    build_blocks, build_sp, conductor, decompose_verified, frobenius_ss, is_isomorphic, purity_check, purity_route_a, purity_route_b,
    same_block_multiset, sp_ladder, Purity, SpBlock, WdRep,
};

const SEED: u64 = 0x5eed_2024;
const BATTERY_SIZE: usize = 100;

type Check = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lf() -> LocalFieldData {
    LocalFieldData::new(3, 1).unwrap()
}

fn triv() -> Arc<RamificationDatum> {
    Arc::new(RamificationDatum::trivial())
}

fn total(w: &WdRep<Cyclo>) -> Rational {
    conductor(w).unwrap().total
}

fn golden_conductors() -> Check {
    let start = Instant::now();
    let unram = WdRep::unramified(lf(), Matrix::diagonal(vec![Cyclo::from_int(2), Cyclo::from_int(5)]), Matrix::zeros(2, 2));
    ensure(total(&unram) == rat(0, 1), || "unramified N=0".into())?;
    let sp2 = build_sp(&SpBlock::unramified(2, WeilMonomial::one(), triv()), &lf()).unwrap();
    ensure(total(&sp2) == rat(1, 1), || "Sp_2".into())?;
    let c2 = Arc::new(RamificationDatum::cyclic(2, &[2]));
    let sign = WdRep::new(lf(), c2, vec![Matrix::identity(1), Matrix::diagonal(vec![Cyclo::from_int(-1)])], Matrix::identity(1), Matrix::zeros(1, 1));
    ensure(total(&sign) == rat(1, 1), || "tame character".into())?;
    let c3 = Arc::new(RamificationDatum::cyclic(3, &[3, 3]));
    let rho = (0..3).map(|k| Matrix::diagonal(vec![Cyclo::zeta_pow(3, k)])).collect();
    let wild = WdRep::new(lf(), c3, rho, Matrix::identity(1), Matrix::zeros(1, 1));
    let c = conductor(&wild).unwrap();
    ensure(c.total == rat(2, 1) && c.swan_term == rat(1, 1), || format!("wild C_3 character: {c}"))?;
    for t in 1..=5usize {
        let sp = build_sp(&SpBlock::unramified(t, WeilMonomial::one(), triv()), &lf()).unwrap();
        ensure(total(&sp) == rat(t as i64 - 1, 1), || format!("Sp_{t}"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("9 golden values in {elapsed:.2?}"))
}

fn conductor_constancy(cases: &[BatteryCase]) -> Check {
    let start = Instant::now();
    let (mut pure, mut points, mut jumps) = (0, 0, 0);
    for case in cases {
        ensure(case.points.len() >= 5, || format!("case {} has {} points", case.id, case.points.len()))?;
        ensure(case.family.rep.dim() <= 6 && case.family.domain.names.len() <= 3, || format!("case {} too large", case.id))?;
        let report = sweep(&case.family, &case.points).map_err(|e| format!("case {}: {e}", case.id))?;
        for row in &report.rows {
            points += 1;
            ensure(row.error.is_none(), || format!("case {} at {}: {:?}", case.id, row.point, row.error))?;
            ensure(!row.is_violation(), || format!("case {} at {}: {:?} vs generic {}", case.id, row.point, row.conductor, report.generic))?;
            jumps += usize::from(!row.matches_generic);
        }
        pure += report.pure_rows();
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(300), || format!("took {elapsed:?}"))?;
    Ok(format!("{} families, {points} points, {pure} pure, {jumps} jumps at non-pure points, {elapsed:.1?}", cases.len()))
}

fn oracle_equivalences(cases: &[BatteryCase]) -> Check {
    let mut swan_pairs = 0;
    let mut inv_pairs = 0;
    for fx in fixtures() {
        let sums = fx.irreps.iter().zip(fx.irreps.iter().cycle().skip(1)).map(|(a, b)| a.iter().zip(b).map(|(p, q)| p.block_diag(q)).collect());
        let reps: Vec<Vec<Matrix<Cyclo>>> = fx.irreps.iter().cloned().chain(sums).collect();
        for rho in &reps {
            let a = swan_exponent(&fx.datum, rho).unwrap();
            let b = swan_exponent_integral(&fx.datum, rho).unwrap();
            ensure(a == b, || format!("{}: swan {a} vs {b}", fx.name))?;
            swan_pairs += 1;
            for i in 0..fx.datum.depth() {
                let h = fx.datum.gamma(i);
                let x = invariants_dim_of(&fx.datum, rho, h).unwrap();
                let y = fixed_space(&fx.datum, rho, h).unwrap().cols();
                ensure(x == y, || format!("{}: invariants {x} vs {y}", fx.name))?;
                inv_pairs += 1;
            }
        }
    }
    ensure(swan_pairs >= 20 && inv_pairs >= 20, || format!("only {swan_pairs} swan and {inv_pairs} invariant pairs"))?;
    let mut decided = 0;
    for case in cases {
        for p in &case.points {
            let Ok(w) = specialize(&case.family, p) else { continue };
            let (a, b) = (purity_route_a(&w).unwrap(), purity_route_b(&w).unwrap());
            if a.is_decidable() && b.is_decidable() {
                decided += 1;
                let agree = match (&a, &b) {
                    (Purity::Pure { weight: x }, Purity::Pure { weight: y }) => x == y,
                    (Purity::NotPure { .. }, Purity::NotPure { .. }) => true,
                    _ => false,
                };
                ensure(agree, || format!("case {} at {p}: {a} vs {b}", case.id))?;
            }
        }
    }
    Ok(format!("{swan_pairs} swan pairs, {inv_pairs} invariant pairs, {decided} decidable purity checks"))
}

fn frobss_properties(cases: &[BatteryCase]) -> Check {
    let mut n = 0;
    for case in cases {
        for p in &case.points {
            let Ok(w) = specialize(&case.family, p) else { continue };
            let ss = frobenius_ss(&w).unwrap();
            let at = || format!("case {} at {p}", case.id);
            ensure(frobenius_ss(&ss).unwrap() == ss, || format!("{}: not idempotent", at()))?;
            ensure(ss.rho() == w.rho() && ss.n() == w.n(), || format!("{}: inertia or N changed", at()))?;
            ensure(ss.phi().charpoly() == w.phi().charpoly(), || format!("{}: charpoly changed", at()))?;
            ensure(conductor(&ss).unwrap() == conductor(&w).unwrap(), || format!("{}: conductor changed", at()))?;
            n += 1;
        }
    }
    Ok(format!("{n} specializations"))
}

fn decompose_recompose() -> Check {
    let cases = constructed_cases(SEED, 50);
    for (i, case) in cases.iter().enumerate() {
        let (found, _) = decompose_verified(&case.rep).map_err(|e| format!("case {i}: {e}"))?;
        ensure(same_block_multiset(&found, &case.blocks).unwrap(), || format!("case {i} ({}): blocks differ", case.fixture))?;
        let rebuilt = build_blocks(&found, case.rep.lf()).unwrap();
        ensure(is_isomorphic(&rebuilt, &case.rep).unwrap().is_some(), || format!("case {i}: rebuilt is not isomorphic"))?;
    }
    Ok(format!("{} cases", cases.len()))
}

fn x() -> LaurentPoly {
    LaurentPoly::var(0)
}

fn domain_x() -> Domain {
    Domain::new(vec!["x".into()], 1)
}

fn at(label: &str, v: Cyclo) -> SpecializationMap {
    SpecializationMap::new(label, [("x".to_string(), v)])
}

fn degeneration_regression() -> Check {
    let z = LaurentPoly::zero();
    let phi = Matrix::diagonal(vec![LaurentPoly::one(), LaurentPoly::constant(lf().q_pow(-1))]);
    let n = Matrix::from_rows(vec![vec![z.clone(), z.clone()], vec![x(), z]]).unwrap();
    let fam = Family::new(domain_x(), WdRep::unramified(lf(), phi, n));
    let report = sweep(&fam, &[at("x=1", Cyclo::one()), at("x=0", Cyclo::zero())]).unwrap();
    ensure(report.generic.total == rat(1, 1), || format!("generic {}", report.generic))?;
    let (one, zero) = (&report.rows[0], &report.rows[1]);
    ensure(matches!(one.purity, Some(Purity::Pure { .. })), || format!("x=1 is {:?}", one.purity))?;
    ensure(one.conductor.as_ref().map(|c| &c.total) == Some(&rat(1, 1)), || "conductor at x=1".into())?;
    ensure(matches!(zero.purity, Some(Purity::NotPure { .. })), || format!("x=0 is {:?}", zero.purity))?;
    ensure(zero.conductor.as_ref().map(|c| &c.total) == Some(&rat(0, 1)), || "conductor at x=0".into())?;
    let w0 = specialize(&fam, &at("x=0", Cyclo::zero())).unwrap();
    ensure(matches!(purity_check(&w0).unwrap(), Purity::NotPure { .. }), || "purity_check at x=0".into())?;
    ensure(report.violations().is_empty(), || "sweep reports a violation".into())?;
    Ok("generic 1, x=1 pure with 1, x=0 not pure with 0".into())
}

fn trace_harness(cases: &[BatteryCase]) -> Check {
    let sp2 = Family::new(domain_x(), sp_ladder(lf(), triv(), 2, &x(), &[Matrix::identity(1)], &Matrix::identity(1)));
    let phi = Matrix::diagonal(vec![x(), x() * LaurentPoly::constant(lf().q_pow(-1))]);
    let diag = Family::new(domain_x(), WdRep::unramified(lf(), phi, Matrix::zeros(2, 2)));
    let points = [at("x=1", Cyclo::one()), at("x=q", Cyclo::from_int(3)), at("x=z3", Cyclo::zeta(3))];
    let members: Vec<_> = points.iter().flat_map(|p| [(sp2.clone(), p.clone()), (diag.clone(), p.clone())]).collect();
    let report = theorem_c_harness(&PseudoTrace::new(sp2.clone()), &members);
    ensure(report.holds() && report.constant == Some(rat(1, 1)), || format!("pair: {report}"))?;
    for (i, m) in report.members.iter().enumerate() {
        let diag_member = i % 2 == 1;
        let failed = matches!(m.status, MemberStatus::HypothesisFailed(_));
        ensure(failed == diag_member, || format!("pair member {i}: {:?}", m.status))?;
    }
    let mut qualified = 0;
    for case in cases {
        let dim = case.family.rep.dim();
        let silenced = Family::new(case.family.domain.clone(), case.family.rep.with_n(Matrix::zeros(dim, dim)));
        let members: Vec<_> =
            case.points.iter().flat_map(|p| [(case.family.clone(), p.clone()), (silenced.clone(), p.clone())]).collect();
        let r = theorem_c_harness(&PseudoTrace::new(case.family.clone()), &members);
        ensure(r.holds(), || format!("case {}: {r}", case.id))?;
        qualified += r.qualified();
    }
    Ok(format!("pair gives C = 1; {} battery inputs, {qualified} qualified members, no violation", cases.len()))
}

fn wdtk(args: &[&str]) -> Result<(i32, Vec<u8>), String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("selftest");
    let out = Command::new(env!("CARGO_BIN_EXE_wdtk")).args(args).current_dir(dir).output().map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), out.stdout))
}

fn cli_selftest() -> Check {
    let (code, out) = wdtk(&["--report", "machine", "selftest"])?;
    let text = String::from_utf8_lossy(&out);
    ensure(code == 0, || format!("selftest exit {code}:\n{text}"))?;
    let passed = text.lines().find_map(|l| l.strip_prefix("passed=")).unwrap_or("?").to_string();
    let runs: [&[&str]; 4] = [
        &["--report", "machine", "selftest"],
        &["--report", "machine", "sweep", "--in", "sp2_x.wdt", "--points", "sp2_x_points.toml"],
        &["--report", "machine", "decompose", "--in", "pure0.wdt"],
        &["--report", "machine", "trace-check", "--in", "sp2_x.wdt", "--against", "diag_x_x.wdt"],
    ];
    for args in runs {
        let first = wdtk(args)?;
        let second = wdtk(args)?;
        ensure(first == second, || format!("output of {args:?} differs between runs"))?;
    }
    Ok(format!("{passed} selftest cases pass; machine output byte-stable"))
}

fn main() -> ExitCode {
    let cases = battery(SEED, BATTERY_SIZE);
    let criteria: Vec<Criterion> = vec![
        ("golden conductors", Box::new(golden_conductors)),
        ("conductor constancy on the battery", Box::new(|| conductor_constancy(&cases))),
        ("oracle equivalences", Box::new(|| oracle_equivalences(&cases))),
        ("Frobenius-semisimplification", Box::new(|| frobss_properties(&cases))),
        ("decompose and recompose", Box::new(decompose_recompose)),
        ("degenerating monodromy", Box::new(degeneration_regression)),
        ("trace-compatible harness", Box::new(|| trace_harness(&cases))),
        ("command line", Box::new(cli_selftest)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        match result {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
