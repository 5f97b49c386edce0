use std::sync::Arc;

use super::*;
use crate::localfield::WeilMonomial;
use crate::scalars::{rat, Cyclo};

fn lf() -> LocalFieldData {
    LocalFieldData::new(3, 1).unwrap()
}

fn m(rows: &[&[i64]]) -> Matrix<Cyclo> {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| Cyclo::from_int(v)).collect()).collect()).unwrap()
}

fn q(k: i64) -> Cyclo {
    lf().q_pow(k)
}

fn triv() -> Arc<RamificationDatum> {
    Arc::new(RamificationDatum::trivial())
}

fn sp(t: usize, b: i64) -> WdRep<Cyclo> {
    build_sp(&SpBlock::unramified(t, WeilMonomial::q_power(b), triv()), &lf()).unwrap()
}

fn e21() -> Matrix<Cyclo> {
    m(&[&[0, 0], &[1, 0]])
}

#[test]
fn validate_examples() {
    assert!(validate_wd(&WdRep::<Cyclo>::trivial(lf(), 1), false).is_valid());
    let bad = WdRep::unramified(lf(), Matrix::identity(2), e21());
    let r = validate_wd(&bad, false);
    assert!(r.has("monodromy-relation"));
    assert!(validate_wd(&sp(2, 0), false).is_valid());
}

#[test]
fn build_sp_examples() {
    let w = sp(1, 0);
    assert_eq!(w, WdRep::trivial(lf(), 1));
    let w = sp(2, 0);
    assert_eq!(w.phi(), &Matrix::diagonal(vec![Cyclo::one(), q(-1)]));
    assert_eq!(w.n(), &e21());
    let chi = WeilMonomial::new(4, 1, 1);
    let w = build_sp(&SpBlock::unramified(2, chi, triv()), &lf()).unwrap();
    assert_eq!(w.phi(), &Matrix::diagonal(vec![Cyclo::zeta(4) * q(1), Cyclo::zeta(4)]));
    assert!(validate_wd(&w, false).is_valid());
}

#[test]
fn sum_and_twist() {
    let t1 = WdRep::<Cyclo>::trivial(lf(), 1);
    assert_eq!(direct_sum(&t1, &t1).unwrap(), WdRep::trivial(lf(), 2));
    assert_eq!(twist_unramified(&sp(2, 0), &Cyclo::one()).unwrap(), sp(2, 0));
    assert_eq!(twist_unramified(&sp(2, 0), &q(1)).unwrap(), sp(2, 1));
    assert!(twist_unramified(&sp(2, 0), &Cyclo::zero()).is_err());
    let other = WdRep::<Cyclo>::trivial(LocalFieldData::new(5, 1).unwrap(), 1);
    assert!(matches!(direct_sum(&t1, &other), Err(Error::MismatchedLocalData(_))));
}

fn c2_rep(rho1: Matrix<Cyclo>) -> WdRep<Cyclo> {
    let n = rho1.rows();
    WdRep::new(
        lf(),
        Arc::new(RamificationDatum::cyclic(2, &[2])),
        vec![Matrix::identity(n), rho1],
        Matrix::identity(n),
        Matrix::zeros(n, n),
    )
}

#[test]
fn invariants_dim_examples() {
    assert_eq!(invariants_dim(&c2_rep(Matrix::identity(2)), &[0, 1]).unwrap(), 2);
    assert_eq!(invariants_dim(&c2_rep(m(&[&[0, 1], &[1, 0]])), &[0, 1]).unwrap(), 1);
    assert_eq!(invariants_dim(&c2_rep(m(&[&[-1]])), &[0, 1]).unwrap(), 0);
    assert!(matches!(invariants_dim(&c2_rep(m(&[&[-1]])), &[1]), Err(Error::NotSubgroup(_))));
}

#[test]
fn conductor_examples() {
    let c = conductor(&WdRep::unramified(lf(), m(&[&[2]]), m(&[&[0]]))).unwrap();
    assert_eq!(c.total, rat(0, 1));
    let c = conductor(&sp(2, 0)).unwrap();
    assert_eq!((c.tame_term, c.total.clone()), (1, rat(1, 1)));
    let c = conductor(&c2_rep(m(&[&[-1]]))).unwrap();
    assert_eq!(c.total, rat(1, 1));
    let wild = WdRep::new(
        lf(),
        Arc::new(RamificationDatum::cyclic(3, &[3, 3])),
        (0..3).map(|k| Matrix::diagonal(vec![Cyclo::zeta_pow(3, k)])).collect(),
        Matrix::identity(1),
        Matrix::zeros(1, 1),
    );
    let c = conductor(&wild).unwrap();
    assert_eq!((c.tame_term, c.swan_term.clone(), c.total.clone()), (1, rat(1, 1), rat(2, 1)));
    assert!(!c.realizability_warning);
    for t in 1..=5 {
        assert_eq!(conductor(&sp(t, 0)).unwrap().total, rat(t as i64 - 1, 1));
    }
}

#[test]
fn frobenius_ss_examples() {
    let w = sp(2, 0);
    assert_eq!(frobenius_ss(&w).unwrap(), w);
    let u = WdRep::unramified(lf(), m(&[&[1, 1], &[0, 1]]), Matrix::zeros(2, 2));
    assert!(frobenius_ss(&u).unwrap().phi().is_identity());
}

#[test]
fn monodromy_filtration_examples() {
    let f = monodromy_filtration(&Matrix::<Cyclo>::zeros(2, 2)).unwrap();
    assert_eq!(f.graded_dims(), vec![(0, 2)]);
    let f = monodromy_filtration(&e21()).unwrap();
    assert_eq!(f.graded_dims(), vec![(-1, 1), (1, 1)]);
    let f = monodromy_filtration(sp(3, 0).n()).unwrap();
    assert_eq!(f.graded_dims(), vec![(-2, 1), (0, 1), (2, 1)]);
    assert!(monodromy_filtration(&m(&[&[1]])).is_err());
}

#[test]
fn decompose_examples() {
    let blocks = decompose(&sp(2, 0)).unwrap();
    assert_eq!(blocks.len(), 1);
    assert_eq!((blocks[0].t, blocks[0].chi), (2, WeilMonomial::one()));

    let sum = direct_sum(&sp(1, 0), &sp(1, 1)).unwrap();
    let x = m(&[&[1, 1], &[0, 1]]);
    let xi = m(&[&[1, -1], &[0, 1]]);
    let conj = sum.conjugate(&x, &xi);
    let expected = [
        SpBlock::unramified(1, WeilMonomial::one(), triv()),
        SpBlock::unramified(1, WeilMonomial::q_power(1), triv()),
    ];
    let (found, _) = decompose_verified(&conj).unwrap();
    assert!(same_block_multiset(&found, &expected).unwrap());

    let w = direct_sum(&sp(3, 1), &sp(1, 0)).unwrap();
    let found = decompose(&w).unwrap();
    let expected = [
        SpBlock::unramified(3, WeilMonomial::q_power(1), triv()),
        SpBlock::unramified(1, WeilMonomial::one(), triv()),
    ];
    assert!(same_block_multiset(&found, &expected).unwrap());

    let nonss = WdRep::unramified(lf(), m(&[&[1, 1], &[0, 1]]), Matrix::zeros(2, 2));
    assert_eq!(decompose(&nonss), Err(Error::NotFrobeniusSemisimple));
    // eigenvalues 2 and 1/2 are not q-monomials for q = 3
    let odd = WdRep::unramified(lf(), Matrix::diagonal(vec![Cyclo::from_int(2), Cyclo::one()]), Matrix::zeros(2, 2));
    assert!(matches!(decompose(&odd), Err(Error::Undecidable(_))));
}

#[test]
fn decompose_splits_roots_of_unity_into_rho() {
    let chi = WeilMonomial::new(4, 1, 1);
    let w = build_sp(&SpBlock::unramified(2, chi, triv()), &lf()).unwrap();
    let found = decompose(&w).unwrap();
    assert_eq!(found[0].chi, WeilMonomial::q_power(1));
    assert_eq!(found[0].rho.frobenius, Matrix::diagonal(vec![Cyclo::zeta(4)]));
    assert!(same_block_multiset(&found, &[SpBlock::unramified(2, chi, triv())]).unwrap());
}

#[test]
fn purity_examples() {
    assert_eq!(purity_check(&sp(1, 0)).unwrap(), Purity::Pure { weight: 0 });
    let w = direct_sum(&sp(1, 0), &sp(3, 1)).unwrap();
    assert_eq!(purity_check(&w).unwrap(), Purity::Pure { weight: 0 });
    let w = direct_sum(&sp(1, 0), &sp(1, 1)).unwrap();
    assert!(matches!(purity_check(&w).unwrap(), Purity::NotPure { .. }));
    assert_eq!(purity_check(&sp(2, 0)).unwrap(), Purity::Pure { weight: -1 });
}

#[test]
fn isomorphism_examples() {
    let a = sp(2, 0);
    assert!(is_isomorphic(&a, &a).unwrap().is_some());
    let x = m(&[&[2, 1], &[1, 1]]);
    let xi = x.inverse().unwrap();
    let conj = a.conjugate(&x, &xi);
    let w = is_isomorphic(&a, &conj).unwrap().unwrap();
    assert_eq!(&w * a.phi(), conj.phi() * &w);
    let split = direct_sum(&sp(1, 0), &sp(1, -1)).unwrap();
    assert!(is_isomorphic(&a, &split).unwrap().is_none());
}
