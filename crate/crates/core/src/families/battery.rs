//! Seeded generators of test inputs: a library of inertia fixtures, random
//! families over Laurent domains with specialization points, and
//! constructed-then-conjugated representations with known blocks.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{lift_matrix, Domain, Family, SpecializationMap};
use crate::localfield::{LocalFieldData, RamificationDatum, WeilMonomial};
use crate::scalars::{lcm_order, Cyclo, LaurentPoly, Matrix, Monomial, Scalar};
use crate::wdrep::{build_blocks, direct_sum, sp_ladder, FiniteRep, SpBlock, WdRep};

/// A ramification datum together with its irreducible inertia
/// representations. Frobenius acts trivially on inertia.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub lf: LocalFieldData,
    pub datum: Arc<RamificationDatum>,
    /// Images of every group element, one list per representation.
    pub irreps: Vec<Vec<Matrix<Cyclo>>>,
    /// Cyclotomic order the representations are written in.
    pub order: u32,
}

/// A finite matrix group enumerated breadth-first from generators, with
/// element `i` equal to `elements[parent[i].0] * gens[parent[i].1]`.
struct Enumerated {
    elements: Vec<Matrix<Cyclo>>,
    parent: Vec<(usize, usize)>,
}

impl Enumerated {
    fn new(gens: &[Matrix<Cyclo>]) -> Self {
        let dim = gens[0].rows();
        let mut elements = vec![Matrix::identity(dim)];
        let mut parent = vec![(0, 0)];
        let mut next = 0;
        while next < elements.len() {
            for (j, g) in gens.iter().enumerate() {
                let y = &elements[next] * g;
                if !elements.contains(&y) {
                    elements.push(y);
                    parent.push((next, j));
                }
            }
            next += 1;
        }
        Enumerated { elements, parent }
    }

    fn index(&self, m: &Matrix<Cyclo>) -> usize {
        self.elements.iter().position(|e| e == m).expect("element of the group")
    }

    fn mul_table(&self) -> Vec<Vec<usize>> {
        let els = &self.elements;
        els.iter().map(|a| els.iter().map(|b| self.index(&(a * b))).collect()).collect()
    }

    /// Extends generator images to every element.
    fn extend(&self, images: &[Matrix<Cyclo>]) -> Vec<Matrix<Cyclo>> {
        let dim = images[0].rows();
        let mut out: Vec<Matrix<Cyclo>> = vec![Matrix::identity(dim)];
        for &(p, j) in &self.parent[1..] {
            let m = &out[p] * &images[j];
            out.push(m);
        }
        out
    }
}

fn mat(rows: &[&[Cyclo]]) -> Matrix<Cyclo> {
    Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).expect("rectangular")
}

fn int(n: i64) -> Cyclo {
    Cyclo::from_int(n)
}

fn scalar(c: Cyclo) -> Matrix<Cyclo> {
    Matrix::diagonal(vec![c])
}

/// `gens` generate the group faithfully; `chain` lists generators of
/// `Gamma_1, Gamma_2, ...` inside it; `irreps` gives generator images.
fn fixture(
    name: &'static str,
    ell: u64,
    gens: Vec<Matrix<Cyclo>>,
    chain: Vec<Vec<Matrix<Cyclo>>>,
    irreps: Vec<Vec<Matrix<Cyclo>>>,
    order: u32,
) -> Fixture {
    let group = Enumerated::new(&gens);
    let mul = group.mul_table();
    let n = mul.len();
    let probe = RamificationDatum::new(mul.clone(), vec![(0..n).collect()], (0..n).collect());
    let mut steps: Vec<Vec<usize>> = vec![(0..n).collect()];
    for sub in &chain {
        let idx: Vec<usize> = sub.iter().map(|m| group.index(m)).collect();
        steps.push(probe.closure(&idx));
    }
    if steps.last().is_some_and(|g| g.len() != 1) {
        steps.push(vec![0]);
    }
    let datum = Arc::new(RamificationDatum::new(mul, steps, (0..n).collect()));
    let irreps = irreps.iter().map(|imgs| group.extend(imgs)).collect();
    Fixture {
        name,
        lf: LocalFieldData::new(ell, 1).expect("prime"),
        datum,
        irreps,
        order,
    }
}

fn cyclic_fixture(name: &'static str, ell: u64, m: u32, chain: &[u32]) -> Fixture {
    let g = scalar(Cyclo::zeta(m));
    let chain = chain.iter().map(|&d| vec![scalar(Cyclo::zeta_pow(m, (m / d) as i64))]).collect();
    let irreps = (0..m as i64).map(|k| vec![scalar(Cyclo::zeta_pow(m, k))]).collect();
    fixture(name, ell, vec![g], chain, irreps, m)
}

/// The fixture library: unramified, tame cyclic, wild cyclic of two
/// depths, a cyclic group with wild subgroup, S_3 over A_3, and Q_8.
pub fn fixtures() -> Vec<Fixture> {
    let one = int(1);
    let zero = int(0);
    let neg = int(-1);
    let i4 = Cyclo::zeta(4);
    let r = mat(&[&[zero.clone(), neg.clone()], &[one.clone(), neg.clone()]]);
    let s = mat(&[&[zero.clone(), one.clone()], &[one.clone(), zero.clone()]]);
    let s3 = fixture(
        "S3 wild A3",
        3,
        vec![r.clone(), s.clone()],
        vec![vec![r.clone()]],
        vec![
            vec![scalar(int(1)), scalar(int(1))],
            vec![scalar(int(1)), scalar(int(-1))],
            vec![r, s],
        ],
        1,
    );
    let qi = mat(&[&[i4.clone(), zero.clone()], &[zero.clone(), -i4.clone()]]);
    let qj = mat(&[&[zero.clone(), one.clone()], &[neg.clone(), zero.clone()]]);
    let minus = Matrix::identity(2).scale(&neg);
    let signs = [(1, 1), (1, -1), (-1, 1), (-1, -1)];
    let mut q8_irreps: Vec<Vec<Matrix<Cyclo>>> =
        signs.iter().map(|&(a, b)| vec![scalar(int(a)), scalar(int(b))]).collect();
    q8_irreps.push(vec![qi.clone(), qj.clone()]);
    let q8 = fixture(
        "Q8",
        2,
        vec![qi.clone(), qj.clone()],
        vec![vec![qi, qj], vec![minus]],
        q8_irreps,
        4,
    );
    vec![
        cyclic_fixture("unramified", 3, 1, &[]),
        cyclic_fixture("tame C2", 3, 2, &[]),
        cyclic_fixture("tame C4", 5, 4, &[]),
        cyclic_fixture("wild C3", 3, 3, &[3]),
        cyclic_fixture("deep wild C3", 3, 3, &[3, 3]),
        cyclic_fixture("C6 wild C3", 3, 6, &[3, 3]),
        s3,
        q8,
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockKind {
    /// `Sp_t` ladder.
    Ladder(usize),
    /// Two copies glued by a unipotent Frobenius, `N = 0`.
    Unipotent,
}

/// One generated summand: `alpha = zeta^zeta_exp q^b prod x_i^exps[i]`
/// tensored with irreducible `irrep` of the fixture.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockSpec {
    pub kind: BlockKind,
    pub irrep: usize,
    pub zeta_exp: i64,
    pub b: i64,
    pub exps: Vec<i32>,
    /// `N` of this block is multiplied by the degeneration variable.
    pub degenerate: bool,
}

#[derive(Debug, Clone)]
pub struct BatteryCase {
    pub id: usize,
    pub fixture: &'static str,
    pub family: Family,
    pub points: Vec<SpecializationMap>,
    pub blocks: Vec<BlockSpec>,
    /// Block weights agree generically, so points on the unit circle are pure.
    pub aligned: bool,
    /// Index of the variable scaling `N`, if any.
    pub degeneration: Option<usize>,
}

const TWIST_NAMES: [&str; 3] = ["x", "u", "v"];
const MAX_DIM: usize = 6;

fn block_rep(fx: &Fixture, domain: &Domain, spec: &BlockSpec) -> WdRep<LaurentPoly> {
    let coeff = WeilMonomial::new(domain.order, spec.zeta_exp, spec.b).value(&fx.lf);
    let alpha = LaurentPoly::term(Monomial::new(spec.exps.iter().copied()), coeff);
    let inertia: Vec<Matrix<LaurentPoly>> = fx.irreps[spec.irrep].iter().map(lift_matrix).collect();
    let d = inertia[0].rows();
    match spec.kind {
        BlockKind::Ladder(t) => {
            let w = sp_ladder(fx.lf, fx.datum.clone(), t, &alpha, &inertia, &Matrix::identity(d));
            match (spec.degenerate, domain.names.iter().position(|n| n == "y")) {
                (true, Some(y)) => {
                    let n = w.n().scale(&LaurentPoly::var(y));
                    w.with_n(n)
                }
                _ => w,
            }
        }
        BlockKind::Unipotent => {
            let j = Matrix::from_rows(vec![
                vec![alpha.clone(), alpha.clone()],
                vec![LaurentPoly::zero(), alpha],
            ])
            .expect("2x2");
            WdRep::new(
                fx.lf,
                fx.datum.clone(),
                inertia.iter().map(|g| Matrix::identity(2).kron(g)).collect(),
                j.kron(&Matrix::identity(d)),
                Matrix::zeros(2 * d, 2 * d),
            )
        }
    }
}

/// Product of `count` elementary matrices `I + c m E_ij` with their inverse.
fn unimodular<S: Scalar>(
    rng: &mut ChaCha8Rng,
    dim: usize,
    count: usize,
    mut entry: impl FnMut(&mut ChaCha8Rng) -> S,
) -> (Matrix<S>, Matrix<S>) {
    let mut x = Matrix::identity(dim);
    let mut x_inv = Matrix::identity(dim);
    if dim < 2 {
        return (x, x_inv);
    }
    for _ in 0..count {
        let i = rng.gen_range(0..dim);
        let mut j = rng.gen_range(0..dim - 1);
        if j >= i {
            j += 1;
        }
        let c = entry(rng);
        let mut e = Matrix::identity(dim);
        e.set(i, j, c.clone());
        let mut e_inv = Matrix::identity(dim);
        e_inv.set(i, j, -c);
        x = &x * &e;
        x_inv = &e_inv * &x_inv;
    }
    (x, x_inv)
}

fn nonzero_small(rng: &mut ChaCha8Rng) -> i64 {
    *[-2i64, -1, 1, 2].choose(rng).expect("nonempty")
}

fn random_blocks(rng: &mut ChaCha8Rng, fx: &Fixture, twists: usize, aligned: bool, degeneration: bool) -> Vec<BlockSpec> {
    let weight = rng.gen_range(-2i64..=2);
    let shared: Vec<i32> = (0..twists).map(|_| rng.gen_range(-1..=1)).collect();
    let nblocks = rng.gen_range(1..=3);
    let mut remaining = MAX_DIM;
    let mut out = Vec::new();
    for _ in 0..nblocks {
        let fitting: Vec<usize> = (0..fx.irreps.len()).filter(|&i| fx.irreps[i][0].rows() <= remaining).collect();
        let Some(&irrep) = fitting.choose(rng) else { break };
        let d = fx.irreps[irrep][0].rows();
        let ts: Vec<usize> = (1..=3)
            .filter(|&t| t * d <= remaining && (!aligned || (weight + t as i64 - 1) % 2 == 0))
            .collect();
        let unipotent_ok = 2 * d <= remaining && (!aligned || weight % 2 == 0);
        let kind = if unipotent_ok && rng.gen_bool(0.15) {
            BlockKind::Unipotent
        } else if let Some(&t) = ts.choose(rng) {
            BlockKind::Ladder(t)
        } else {
            break;
        };
        let t = match kind {
            BlockKind::Ladder(t) => t,
            BlockKind::Unipotent => 1,
        };
        let b = if aligned { (weight + t as i64 - 1).div_euclid(2) } else { rng.gen_range(-1..=1) };
        let exps = if aligned { shared.clone() } else { (0..twists).map(|_| rng.gen_range(-1..=1)).collect() };
        out.push(BlockSpec {
            kind,
            irrep,
            zeta_exp: rng.gen_range(0..12),
            b,
            exps,
            degenerate: degeneration && matches!(kind, BlockKind::Ladder(t) if t > 1) && rng.gen_bool(0.7),
        });
        remaining -= if kind == BlockKind::Unipotent { 2 * d } else { t * d };
    }
    out
}

fn random_points(rng: &mut ChaCha8Rng, domain: &Domain, lf: &LocalFieldData, count: usize) -> Vec<SpecializationMap> {
    let n = domain.order;
    (0..count)
        .map(|p| {
            let assignment: Vec<(String, Cyclo)> = domain
                .names
                .iter()
                .map(|name| {
                    let zeta = Cyclo::zeta_pow(n, rng.gen_range(0..n as i64));
                    let v = if p == 0 {
                        Cyclo::one()
                    } else if name == "y" {
                        match (p, rng.gen_range(0..4)) {
                            (1, _) | (_, 0) => Cyclo::zero(),
                            (_, 1) => Cyclo::one(),
                            (_, 2) => zeta,
                            _ => int(2),
                        }
                    } else {
                        match rng.gen_range(0..6) {
                            0 | 1 => zeta,
                            2 => zeta * lf.q_pow::<Cyclo>(if rng.gen_bool(0.5) { 1 } else { -1 }),
                            3 => int(2),
                            4 => int(-1),
                            _ => Cyclo::one(),
                        }
                    };
                    (name.clone(), v)
                })
                .collect();
            let label = assignment
                .iter()
                .map(|(k, v)| format!("{k}={}", v.to_expr()))
                .collect::<Vec<_>>()
                .join(",");
            SpecializationMap::new(label, assignment)
        })
        .collect()
}

fn generate_case(rng: &mut ChaCha8Rng, id: usize, fx: &Fixture) -> BatteryCase {
    let nvars = rng.gen_range(1..=3usize);
    let degeneration = nvars >= 2 && rng.gen_bool(0.4);
    let twists = if degeneration { nvars - 1 } else { nvars };
    let mut names: Vec<String> = TWIST_NAMES[..twists].iter().map(|s| s.to_string()).collect();
    if degeneration {
        names.push("y".into());
    }
    let extra = *[1u32, 1, 3].choose(rng).expect("nonempty");
    let domain = Domain::new(names, lcm_order(fx.order, extra));
    let aligned = rng.gen_bool(0.6);
    let blocks = random_blocks(rng, fx, twists, aligned, degeneration);
    let mut rep: Option<WdRep<LaurentPoly>> = None;
    for spec in &blocks {
        let b = block_rep(fx, &domain, spec);
        rep = Some(match rep {
            None => b,
            Some(a) => direct_sum(&a, &b).expect("shared local data"),
        });
    }
    let rep = rep.expect("at least one block");
    let conj_count = rng.gen_range(0..=3);
    let (x, x_inv) = unimodular(rng, rep.dim(), conj_count, |r| {
        let var = r.gen_range(0..twists);
        let e = r.gen_range(-1..=1);
        LaurentPoly::term(Monomial::var(var, e), int(nonzero_small(r)))
    });
    let rep = rep.conjugate(&x, &x_inv);
    let points = random_points(rng, &domain, &fx.lf, 6);
    BatteryCase {
        id,
        fixture: fx.name,
        family: Family::new(domain, rep),
        points,
        blocks,
        aligned,
        degeneration: degeneration.then_some(nvars - 1),
    }
}

/// `count` random families cycling through the fixture library, each with
/// six points; the first point sets every variable to 1.
pub fn battery(seed: u64, count: usize) -> Vec<BatteryCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fx = fixtures();
    (0..count).map(|i| generate_case(&mut rng, i, &fx[i % fx.len()])).collect()
}

/// A representation built from known blocks and conjugated by an integral
/// unimodular matrix.
#[derive(Debug, Clone)]
pub struct ConstructedCase {
    pub fixture: &'static str,
    pub blocks: Vec<SpBlock>,
    pub rep: WdRep<Cyclo>,
}

pub fn constructed_cases(seed: u64, count: usize) -> Vec<ConstructedCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fx = fixtures();
    (0..count)
        .map(|i| {
            let f = &fx[i % fx.len()];
            let order = lcm_order(f.order, *[1u32, 3].choose(&mut rng).expect("nonempty"));
            let mut remaining = MAX_DIM;
            let mut blocks = Vec::new();
            for _ in 0..rng.gen_range(1..=3) {
                let irrep = rng.gen_range(0..f.irreps.len());
                let d = f.irreps[irrep][0].rows();
                let ts: Vec<usize> = (1..=3).filter(|&t| t * d <= remaining).collect();
                let Some(&t) = ts.choose(&mut rng) else { break };
                let chi = WeilMonomial::new(order, rng.gen_range(0..order as i64), rng.gen_range(-1..=1));
                let rho = FiniteRep::new(f.datum.clone(), f.irreps[irrep].clone(), Matrix::identity(d));
                blocks.push(SpBlock::new(t, chi, rho));
                remaining -= t * d;
            }
            let built = build_blocks(&blocks, &f.lf).expect("valid blocks");
            let (x, x_inv) = unimodular(&mut rng, built.dim(), 3, |r| int(nonzero_small(r)));
            ConstructedCase {
                fixture: f.name,
                blocks,
                rep: built.conjugate(&x, &x_inv),
            }
        })
        .collect()
}
