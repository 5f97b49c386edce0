use std::sync::Arc;

use super::*;
use crate::localfield::{swan_exponent, validate_group_rep, validate_ramification_datum, LocalFieldData, RamificationDatum, WeilMonomial};
use crate::scalars::{rat, Monomial, Scalar};
use crate::wdrep::{build_sp, sp_ladder, SpBlock};

fn lf() -> LocalFieldData {
    LocalFieldData::new(3, 1).unwrap()
}

fn triv() -> Arc<RamificationDatum> {
    Arc::new(RamificationDatum::trivial())
}

fn x() -> LaurentPoly {
    LaurentPoly::var(0)
}

fn c(v: Cyclo) -> LaurentPoly {
    LaurentPoly::constant(v)
}

fn qc(k: i64) -> Cyclo {
    lf().q_pow(k)
}

fn domain_x(order: u32) -> Domain {
    Domain::new(vec!["x".into()], order)
}

fn at(v: Cyclo) -> SpecializationMap {
    SpecializationMap::new("", [("x".to_string(), v)])
}

/// `Sp_2(chi_x)` over `Q[x, 1/x]`.
fn sp2_x() -> Family {
    let w = sp_ladder(lf(), triv(), 2, &x(), &[Matrix::identity(1)], &Matrix::identity(1));
    Family::new(domain_x(1), w)
}

/// `diag(x, a x)` with `N = 0`.
fn diag_x(a: Cyclo) -> Family {
    let phi = Matrix::diagonal(vec![x(), x() * c(a)]);
    Family::new(domain_x(1), WdRep::unramified(lf(), phi, Matrix::zeros(2, 2)))
}

/// Steinberg shape with `N = x E21`.
fn degenerating() -> Family {
    let phi = Matrix::diagonal(vec![LaurentPoly::one(), c(qc(-1))]);
    let n = Matrix::from_rows(vec![vec![LaurentPoly::zero(), LaurentPoly::zero()], vec![x(), LaurentPoly::zero()]]).unwrap();
    Family::new(domain_x(1), WdRep::unramified(lf(), phi, n))
}

fn constant_sp(t: usize, b: i64) -> Family {
    Family::constant(&build_sp(&SpBlock::unramified(t, WeilMonomial::q_power(b), triv()), &lf()).unwrap())
}

#[test]
fn specialize_examples() {
    let w = build_sp(&SpBlock::unramified(2, WeilMonomial::one(), triv()), &lf()).unwrap();
    assert_eq!(specialize(&Family::constant(&w), &SpecializationMap::default()).unwrap(), w);

    let got = specialize(&sp2_x(), &at(Cyclo::zeta(3))).unwrap();
    let want = build_sp(&SpBlock::unramified(2, WeilMonomial::new(3, 1, 0), triv()), &lf()).unwrap();
    assert_eq!(got, want);

    let got = specialize(&degenerating(), &at(Cyclo::zero())).unwrap();
    assert!(got.n().is_zero());

    assert_eq!(specialize(&sp2_x(), &SpecializationMap::default()), Err(Error::UnassignedVariable("x".into())));
    assert_eq!(specialize(&sp2_x(), &at(Cyclo::zero())), Err(Error::Singular));
    let inv = LaurentPoly::term(Monomial::var(0, -1), Cyclo::one());
    let f = Family::new(domain_x(1), WdRep::unramified(lf(), Matrix::diagonal(vec![inv]), Matrix::zeros(1, 1)));
    assert_eq!(specialize(&f, &at(Cyclo::zero())), Err(Error::ZeroAtNegativeExponent("x".into())));
}

#[test]
fn generic_conductor_examples() {
    assert_eq!(generic_conductor(&constant_sp(2, 0)).unwrap().total, rat(1, 1));
    assert_eq!(generic_conductor(&degenerating()).unwrap().total, rat(1, 1));
    assert_eq!(generic_conductor(&diag_x(Cyclo::one())).unwrap().total, rat(0, 1));
}

#[test]
fn sweep_single_block() {
    let pts = [at(Cyclo::zeta(3)), at(qc(1)), at(Cyclo::from_int(2))];
    let r = sweep(&sp2_x(), &pts).unwrap();
    assert_eq!(r.generic.total, rat(1, 1));
    for row in &r.rows {
        assert_eq!(row.conductor.as_ref().unwrap().total, rat(1, 1));
        assert!(row.matches_generic && row.terms_match);
    }
    assert!(r.rows[0].purity.as_ref().unwrap().is_pure());
    assert!(r.rows[1].purity.as_ref().unwrap().is_pure());
    // 2 and 2/3 are not of the form zeta * 3^b
    assert!(!r.rows[2].purity.as_ref().unwrap().is_decidable());
    assert!(r.violations().is_empty());
}

#[test]
fn sweep_conjugated_sum() {
    let phi = Matrix::diagonal(vec![LaurentPoly::one(), x()]);
    let w = WdRep::unramified(lf(), phi, Matrix::zeros(2, 2));
    let one = LaurentPoly::one;
    let xm = Matrix::from_rows(vec![vec![one(), x()], vec![LaurentPoly::zero(), one()]]).unwrap();
    let xi = Matrix::from_rows(vec![vec![one(), -x()], vec![LaurentPoly::zero(), one()]]).unwrap();
    let fam = Family::new(domain_x(4), w.conjugate(&xm, &xi));
    let r = sweep(&fam, &[at(Cyclo::zeta(4)), at(qc(1))]).unwrap();
    assert_eq!(r.generic.total, rat(0, 1));
    assert!(r.rows[0].purity.as_ref().unwrap().is_pure());
    assert!(matches!(r.rows[1].purity, Some(Purity::NotPure { .. })));
    assert!(r.rows.iter().all(|row| row.conductor.as_ref().unwrap().total == rat(0, 1)));
}

#[test]
fn sweep_jump_only_at_non_pure_point() {
    let r = sweep(&degenerating(), &[at(Cyclo::one()), at(Cyclo::zero())]).unwrap();
    assert_eq!(r.generic.total, rat(1, 1));
    let (pure, jump) = (&r.rows[0], &r.rows[1]);
    assert_eq!(pure.purity, Some(Purity::Pure { weight: -1 }));
    assert!(pure.matches_generic);
    assert!(matches!(jump.purity, Some(Purity::NotPure { .. })));
    assert_eq!(jump.conductor.as_ref().unwrap().total, rat(0, 1));
    assert!(!jump.matches_generic && !jump.is_violation());
    assert!(r.violations().is_empty());
}

#[test]
fn trace_compat_examples() {
    let t = PseudoTrace::new(sp2_x());
    let words = default_words(1, 2);
    assert_eq!(t.value(Word { g: 0, k: 0 }).unwrap(), c(Cyclo::from_int(2)));
    assert!(check_trace_compat(&t, &sp2_x(), &words).unwrap().all_match());
    assert!(check_trace_compat(&t, &diag_x(qc(-1)), &words).unwrap().all_match());
    let r = check_trace_compat(&t, &diag_x(Cyclo::one()), &[Word { g: 0, k: 1 }]).unwrap();
    assert_eq!(r.mismatches.len(), 1);
    let bigger = Family::constant(&WdRep::trivial(lf(), 3));
    assert!(matches!(check_trace_compat(&t, &bigger, &words), Err(Error::DimensionMismatch(_))));
}

#[test]
fn trace_values_commute_with_specialization() {
    let t = PseudoTrace::new(degenerating());
    let s = at(Cyclo::zeta(3));
    let w = specialize(&degenerating(), &s).unwrap();
    for word in default_words(1, 2) {
        let generic = t.value(word).unwrap().eval(&[Some(Cyclo::zeta(3))]).unwrap();
        assert_eq!(generic, w.trace_of_word(word.g, word.k).unwrap());
    }
}

#[test]
fn theorem_c_examples() {
    let t = PseudoTrace::new(sp2_x());
    let one = LaurentPoly::one;
    let xm = Matrix::from_rows(vec![vec![one(), c(Cyclo::from_int(2))], vec![LaurentPoly::zero(), one()]]).unwrap();
    let xi = Matrix::from_rows(vec![vec![one(), c(Cyclo::from_int(-2))], vec![LaurentPoly::zero(), one()]]).unwrap();
    let conj = Family::new(domain_x(1), sp2_x().rep.conjugate(&xm, &xi));
    let r = theorem_c_harness(&t, &[(sp2_x(), at(Cyclo::one())), (conj, at(Cyclo::zeta(3)))]);
    assert_eq!((r.constant.clone(), r.qualified()), (Some(rat(1, 1)), 2));

    let r = theorem_c_harness(&t, &[(sp2_x(), at(Cyclo::one())), (diag_x(qc(-1)), at(Cyclo::one()))]);
    assert_eq!(r.constant, Some(rat(1, 1)));
    assert!(r.holds());
    assert!(r.members[1].trace.as_ref().unwrap().all_match());
    assert!(matches!(r.members[1].status, MemberStatus::HypothesisFailed(_)));

    let r = theorem_c_harness(&t, &[]);
    assert_eq!(r.constant, None);
    assert_eq!(r.to_string(), "no qualifying member");
}

#[test]
fn sum_harness_examples() {
    let a = constant_sp(1, 0);
    let r = sum_harness(&[a.clone(), sp2_x()], &at(Cyclo::zeta(3)));
    assert!(r.all_pure());
    assert_eq!(r.holds, Some(true));
    assert_eq!(r.specialized.as_ref().unwrap().total, rat(1, 1));

    let r = sum_harness(&[a], &at(Cyclo::from_int(5)));
    assert_eq!((r.holds, r.generic.unwrap().total), (Some(true), rat(0, 1)));
}

#[test]
fn domain_union_identifies_names() {
    let a = Domain::new(vec!["x".into(), "y".into()], 3);
    let b = Domain::new(vec!["y".into(), "z".into()], 4);
    let (u, ma, mb) = a.union(&b);
    assert_eq!(u.names, ["x", "y", "z"]);
    assert_eq!((u.order, ma, mb), (12, vec![0, 1], vec![1, 2]));
    let p = LaurentPoly::term(Monomial::new([2, -1]), Cyclo::one());
    assert_eq!(p.remap_vars(&[1, 2]), LaurentPoly::term(Monomial::new([0, 2, -1]), Cyclo::one()));
}

#[test]
fn fixtures_are_valid() {
    for fx in battery::fixtures() {
        let r = validate_ramification_datum(&fx.datum, &fx.lf, true);
        assert!(r.is_valid(), "{}: {r}", fx.name);
        for rep in &fx.irreps {
            let r = validate_group_rep(&fx.datum, rep);
            assert!(r.is_valid(), "{}: {r}", fx.name);
        }
    }
    let q8 = battery::fixtures().into_iter().find(|f| f.name == "Q8").unwrap();
    assert_eq!(q8.datum.order(), 8);
    assert_eq!(swan_exponent(&q8.datum, &q8.irreps[4]).unwrap(), rat(5, 2));
}

#[test]
fn battery_families_are_valid_and_seeded() {
    let cases = battery::battery(7, 16);
    for case in &cases {
        assert!(case.family.rep.dim() <= 6);
        assert!(case.family.domain.names.len() <= 3);
        let r = validate_wd(&case.family.rep, false);
        assert!(r.is_valid(), "case {}: {r}", case.id);
    }
    let again = battery::battery(7, 16);
    assert!(cases.iter().zip(&again).all(|(a, b)| a.family == b.family && a.points == b.points));
}
