use std::collections::BTreeSet;

use super::LocalFieldData;
use crate::report::ValidationReport;
use crate::scalars::{Matrix, Scalar};

/// A finite inertia quotient: multiplication table with identity `0`, the
/// lower-numbering chain `Gamma_0 = G, Gamma_1, ..., Gamma_k = {0}`, and the
/// permutation `psi` describing conjugation by the Frobenius lift.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RamificationDatum {
    mul: Vec<Vec<usize>>,
    chain: Vec<Vec<usize>>,
    psi: Vec<usize>,
}

impl RamificationDatum {
    /// Stores the data as given; call [`validate_ramification_datum`] before use.
    pub fn new(mul: Vec<Vec<usize>>, chain: Vec<Vec<usize>>, psi: Vec<usize>) -> Self {
        RamificationDatum { mul, chain, psi }
    }

    /// The unramified datum: trivial inertia.
    pub fn trivial() -> Self {
        Self::new(vec![vec![0]], vec![vec![0]], vec![0])
    }

    /// `Z/m` with element `k` standing for `g^k`. `chain_orders` lists
    /// `|Gamma_0| = m, |Gamma_1|, ...`, each dividing the previous; a final
    /// trivial group is appended when missing. `psi` is the identity.
    pub fn cyclic(m: usize, chain_orders: &[usize]) -> Self {
        let mul = (0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect();
        let mut chain: Vec<Vec<usize>> = chain_orders
            .iter()
            .map(|&d| {
                let step = m / d.max(1);
                (0..m).filter(|k| k % step == 0).collect()
            })
            .collect();
        if chain.last().is_none_or(|g| g.len() != 1) {
            chain.push(vec![0]);
        }
        Self::new(mul, chain, (0..m).collect())
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn mul_table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    pub fn chain(&self) -> &[Vec<usize>] {
        &self.chain
    }

    pub fn frobenius_perm(&self) -> &[usize] {
        &self.psi
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn psi(&self, g: usize) -> usize {
        self.psi[g]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.mul[a].iter().position(|&x| x == 0).expect("group element has an inverse")
    }

    /// `Gamma_i`; indices past the stored chain give the trivial group.
    pub fn gamma(&self, i: usize) -> &[usize] {
        self.chain.get(i).map_or(&[0][..], Vec::as_slice)
    }

    /// Smallest `k` with `Gamma_k` trivial.
    pub fn depth(&self) -> usize {
        self.chain.iter().position(|g| g.len() <= 1).unwrap_or(self.chain.len())
    }

    /// Inertia is trivial.
    pub fn is_unramified(&self) -> bool {
        self.order() == 1
    }

    /// Wild inertia `Gamma_1` is trivial.
    pub fn is_tame(&self) -> bool {
        self.gamma(1).len() <= 1
    }

    pub fn is_subgroup(&self, h: &[usize]) -> bool {
        let m = self.order();
        if h.is_empty() || h.iter().any(|&x| x >= m) || !h.contains(&0) {
            return false;
        }
        let set: BTreeSet<usize> = h.iter().copied().collect();
        // a nonempty finite subset closed under products is a subgroup
        set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.mul[a][b])))
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::from([0]);
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul[x][g];
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set.into_iter().collect()
    }

    /// A small generating set of the subgroup `h`, chosen greedily in index order.
    pub fn generators(&self, h: &[usize]) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![0];
        for &x in h {
            if !span.contains(&x) {
                gens.push(x);
                span = self.closure(&gens);
            }
        }
        gens
    }

    /// Smallest `k >= 1` with `g^k` in `h`.
    fn order_modulo(&self, g: usize, h: &BTreeSet<usize>) -> usize {
        let mut x = g;
        let mut k = 1;
        while !h.contains(&x) {
            x = self.mul[x][g];
            k += 1;
        }
        k
    }

    fn pow(&self, g: usize, mut e: u64) -> usize {
        let mut acc = 0;
        let mut base = g;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul[acc][base];
            }
            base = self.mul[base][base];
            e >>= 1;
        }
        acc
    }
}

/// Checks the group axioms, the filtration and the Frobenius permutation.
/// With `strict`, additionally requires `psi` to act as `g -> g^q` on the
/// tame quotient `Gamma_0 / Gamma_1`.
pub fn validate_ramification_datum(d: &RamificationDatum, lf: &LocalFieldData, strict: bool) -> ValidationReport {
    let mut r = ValidationReport::new();
    let m = d.mul.len();
    if m == 0 {
        r.push("group", "inertia.mul_table", "empty multiplication table");
        return r;
    }
    for (a, row) in d.mul.iter().enumerate() {
        if row.len() != m {
            r.push("group", format!("inertia.mul_table[{a}]"), format!("row has {} entries, expected {m}", row.len()));
            return r;
        }
        if let Some(&bad) = row.iter().find(|&&x| x >= m) {
            r.push("group", format!("inertia.mul_table[{a}]"), format!("entry {bad} is not an element index"));
            return r;
        }
    }
    for a in 0..m {
        if d.mul[0][a] != a || d.mul[a][0] != a {
            r.push("group", format!("inertia.mul_table[{a}]"), "element 0 is not a two-sided identity");
            return r;
        }
    }
    // Latin square rows and columns give unique solvability, hence inverses
    for a in 0..m {
        let row: BTreeSet<usize> = d.mul[a].iter().copied().collect();
        let col: BTreeSet<usize> = (0..m).map(|b| d.mul[b][a]).collect();
        if row.len() != m || col.len() != m {
            r.push("group", format!("inertia.mul_table[{a}]"), "row or column is not a permutation, so inverses fail");
            return r;
        }
    }
    'assoc: for a in 0..m {
        for b in 0..m {
            let ab = d.mul[a][b];
            for c in 0..m {
                if d.mul[ab][c] != d.mul[a][d.mul[b][c]] {
                    r.push("group", "inertia.mul_table", format!("not associative: ({a}*{b})*{c} != {a}*({b}*{c})"));
                    break 'assoc;
                }
            }
        }
    }
    if !r.is_valid() {
        return r;
    }

    if d.chain.is_empty() {
        r.push("chain", "inertia.chain", "the chain must list at least Gamma_0");
        return r;
    }
    for (i, g) in d.chain.iter().enumerate() {
        let loc = format!("inertia.chain[{i}]");
        if g.windows(2).any(|w| w[0] >= w[1]) {
            r.push("chain", loc.clone(), "subgroup must be a strictly increasing index list");
        }
        if !d.is_subgroup(g) {
            r.push("chain", loc.clone(), "not a subgroup");
        }
        if i > 0 && !g.iter().all(|x| d.chain[i - 1].contains(x)) {
            r.push("chain", loc, format!("Gamma_{i} is not contained in Gamma_{}", i - 1));
        }
    }
    if d.chain[0].len() != m {
        r.push("chain", "inertia.chain[0]", "Gamma_0 must be the whole group");
    }
    if d.chain.last().is_some_and(|g| g.len() != 1) {
        r.push("chain", format!("inertia.chain[{}]", d.chain.len() - 1), "the chain must end at the trivial group");
    }
    if !r.is_valid() {
        return r;
    }

    let wild: BTreeSet<usize> = d.gamma(1).iter().copied().collect();
    let mut size = wild.len() as u64;
    while size > 1 && size.is_multiple_of(lf.ell()) {
        size /= lf.ell();
    }
    if size != 1 {
        r.push(
            "wild-inertia",
            "inertia.chain[1]",
            format!("wild inertia has order {}, not a power of ell = {}", wild.len(), lf.ell()),
        );
    }
    for g in 0..m {
        let gi = d.inverse(g);
        if wild.iter().any(|&h| !wild.contains(&d.mul[d.mul[g][h]][gi])) {
            r.push("wild-inertia", "inertia.chain[1]", "Gamma_1 is not normal in Gamma_0");
            break;
        }
    }
    let tame_order = m / wild.len();
    if (tame_order as u64).is_multiple_of(lf.ell()) {
        r.push(
            "tame-quotient",
            "inertia.chain",
            format!("tame quotient has order {tame_order}, divisible by ell = {}", lf.ell()),
        );
    }
    if r.is_valid() && !(0..m).any(|g| d.order_modulo(g, &wild) == tame_order) {
        r.push("tame-quotient", "inertia.chain", "Gamma_0 / Gamma_1 is not cyclic");
    }

    let psi_set: BTreeSet<usize> = d.psi.iter().copied().collect();
    if d.psi.len() != m || psi_set.len() != m || d.psi.iter().any(|&x| x >= m) {
        r.push("frobenius", "inertia.frobenius_perm", "not a permutation of the element indices");
        return r;
    }
    'hom: for a in 0..m {
        for b in 0..m {
            if d.psi[d.mul[a][b]] != d.mul[d.psi[a]][d.psi[b]] {
                r.push("frobenius", "inertia.frobenius_perm", format!("psi({a}*{b}) != psi({a})*psi({b})"));
                break 'hom;
            }
        }
    }
    for (i, g) in d.chain.iter().enumerate() {
        if g.iter().any(|&x| !g.contains(&d.psi[x])) {
            r.push("frobenius", "inertia.frobenius_perm", format!("psi does not preserve Gamma_{i}"));
        }
    }
    if strict && r.is_valid() {
        for g in 0..m {
            let target = d.pow(g, lf.q());
            let diff = d.mul[d.psi[g]][d.inverse(target)];
            if !wild.contains(&diff) {
                r.push(
                    "frobenius-tame",
                    "inertia.frobenius_perm",
                    format!("psi({g}) is not {g}^q modulo Gamma_1"),
                );
                break;
            }
        }
    }
    r
}

/// Checks that `rho` lists one square matrix per group element, of a common
/// size, with `rho(0) = 1` and `rho(a) rho(b) = rho(ab)` for all pairs.
pub fn validate_group_rep<S: Scalar>(d: &RamificationDatum, rho: &[Matrix<S>]) -> ValidationReport {
    let mut r = ValidationReport::new();
    if rho.len() != d.order() {
        r.push(
            "shape",
            "rho",
            format!("{} matrices for a group of order {}", rho.len(), d.order()),
        );
        return r;
    }
    let n = rho[0].rows();
    for (g, m) in rho.iter().enumerate() {
        if m.rows() != n || m.cols() != n {
            r.push("shape", format!("rho[{g}]"), format!("expected {n}x{n}, got {}x{}", m.rows(), m.cols()));
        }
    }
    if !r.is_valid() {
        return r;
    }
    if !rho[0].is_identity() {
        r.push("rho-homomorphism", "rho[0]", "the identity element must act as the identity matrix");
    }
    for a in 1..d.order() {
        for b in 1..d.order() {
            if &rho[a] * &rho[b] != rho[d.mul(a, b)] {
                r.push(
                    "rho-homomorphism",
                    format!("rho[{a}]*rho[{b}]"),
                    format!("rho({a})*rho({b}) != rho({})", d.mul(a, b)),
                );
                return r;
            }
        }
    }
    r
}
