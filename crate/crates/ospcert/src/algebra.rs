//! Basis and structure constants of B(m,n) = osp(2m+1|2n) from the oscillator
//! realization.
//!
//! B(0,n) uses the paper's basis: Cartans H_k = N_k - N_{k+1} (k < n) and
//! H_n = N_n + a0^2 (the a0^2 supplies the +1/2 that closes the odd-odd
//! brackets without a central term), root vectors E_{di-dj} = b_i^+ b_j^-,
//! E_{di+dj} = b_i^+ b_j^+, E_{2dj} = b_j^+ b_j^+, E_{-...} mirrored, odd
//! root vectors a0 b_j^+-.
//!
//! For m >= 1 the Cartan basis is the number-operator one: K_i = F_i - a0^2
//! (fermion side), D_j = N_j + a0^2 (boson side); the paper treats these
//! algebras generically and fixes no convention, so we pick the one in which
//! every bracket closes with no scalar residue.

use crate::field::Scalar;
use crate::oscillator::{
    mul, super_commutator, Modes, OscElement, OscGenerator, OscMonomial, Parity, Sign,
};
use std::collections::BTreeMap;
use std::fmt;

pub type BasisId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Role {
    Cartan(u32),
    EvenRoot,
    OddRoot,
}

#[derive(Clone)]
pub struct BasisElement<K: Scalar> {
    pub id: BasisId,
    pub name: String,
    pub role: Role,
    pub weight: Vec<i64>,
    pub parity: Parity,
    pub realization: OscElement<K>,
}

/// Sparse coefficient vector over basis ids.
pub type SparseVec<K> = Vec<(BasisId, K)>;

#[derive(Debug)]
pub enum AlgebraError {
    UnsupportedSize(String),
    /// An oscillator result was not expressible in the basis; signals a
    /// realization bug rather than a user error.
    Integrity(String),
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::UnsupportedSize(s) => write!(f, "unsupported size: {}", s),
            AlgebraError::Integrity(s) => write!(f, "integrity error: {}", s),
        }
    }
}

impl std::error::Error for AlgebraError {}

pub struct StructureConstants<K: Scalar> {
    pub modes: Modes,
    pub basis: Vec<BasisElement<K>>,
    index: BTreeMap<String, BasisId>,
    /// table[i][j] = coefficients of [X_i, X_j] in the basis
    pub table: Vec<Vec<SparseVec<K>>>,
}

fn weight_name(w: &[i64], m: usize) -> String {
    // compact root labels: E(eps/delta coordinates), e.g. E(d1+d2), E(-2d1), E(e1-d2)
    let mut parts = Vec::new();
    for (idx, &c) in w.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let (sym, mode) = if idx < m { ('e', idx + 1) } else { ('d', idx - m + 1) };
        let mag = if c.abs() == 2 { "2" } else { "" };
        parts.push(format!("{}{}{}{}", if c > 0 { "+" } else { "-" }, mag, sym, mode));
    }
    let s = parts.join("");
    let s = s.strip_prefix('+').unwrap_or(&s).to_string();
    format!("E({})", s)
}

/// Build the basis of B(m,n). Requires n >= 1 (the deformation pairs fermions
/// with bosons; n = 0 has no gb directions).
pub fn build_basis<K: Scalar>(m: u32, n: u32) -> Result<Vec<BasisElement<K>>, AlgebraError> {
    if n < 1 {
        return Err(AlgebraError::UnsupportedSize("n must be >= 1".into()));
    }
    if m + n > 8 {
        return Err(AlgebraError::UnsupportedSize(format!(
            "m + n = {} exceeds the supported range (realizations grow factorially)",
            m + n
        )));
    }
    let modes = Modes { m, n };
    let dim_m = m as usize;
    let dim_n = n as usize;
    let gen = |g: OscGenerator| OscElement::<K>::generator(modes, g);
    let b = |j: u32, s: Sign| gen(OscGenerator::Boson(j, s));
    let a = |i: u32, s: Sign| gen(OscGenerator::Fermion(i, s));
    let a0 = || gen(OscGenerator::A0);
    let a0sq = || OscElement::<K>::one(modes).scale(&K::from_ratio(1, 2));

    let mut out: Vec<BasisElement<K>> = Vec::new();
    let mut push = |name: String, role: Role, weight: Vec<i64>, real: OscElement<K>| {
        let parity = real.parity().expect("realization must be parity-homogeneous");
        out.push(BasisElement { id: 0, name, role, weight, parity, realization: real });
    };

    let wt = |entries: &[(usize, i64)]| {
        let mut w = vec![0i64; dim_m + dim_n];
        for &(idx, c) in entries {
            w[idx] += c;
        }
        w
    };

    // Cartans
    if m == 0 {
        // H_k = N_k - N_{k+1}, H_n = N_n + a0^2
        for k in 1..=n {
            let nk = mul(&b(k, Sign::Plus), &b(k, Sign::Minus));
            let real = if k < n {
                let nk1 = mul(&b(k + 1, Sign::Plus), &b(k + 1, Sign::Minus));
                nk.sub(&nk1)
            } else {
                nk.add(&a0sq())
            };
            push(format!("H{}", k), Role::Cartan(k), vec![0; dim_n], real);
        }
    } else {
        for i in 1..=m {
            let fi = mul(&a(i, Sign::Plus), &a(i, Sign::Minus));
            push(format!("K{}", i), Role::Cartan(i), vec![0; dim_m + dim_n], fi.sub(&a0sq()));
        }
        for j in 1..=n {
            let nj = mul(&b(j, Sign::Plus), &b(j, Sign::Minus));
            push(format!("D{}", j), Role::Cartan(m + j), vec![0; dim_m + dim_n], nj.add(&a0sq()));
        }
    }

    // Even roots, gathered then sorted by lexicographic weight
    let mut evens: Vec<(Vec<i64>, OscElement<K>)> = Vec::new();
    // sp(2n) part
    for i in 1..=dim_n {
        for j in 1..=dim_n {
            if i < j {
                let (bi, bj) = (i as u32, j as u32);
                evens.push((wt(&[(dim_m + i - 1, 1), (dim_m + j - 1, -1)]), mul(&b(bi, Sign::Plus), &b(bj, Sign::Minus))));
                evens.push((wt(&[(dim_m + i - 1, 1), (dim_m + j - 1, 1)]), mul(&b(bi, Sign::Plus), &b(bj, Sign::Plus))));
                evens.push((wt(&[(dim_m + i - 1, -1), (dim_m + j - 1, -1)]), mul(&b(bi, Sign::Minus), &b(bj, Sign::Minus))));
                evens.push((wt(&[(dim_m + i - 1, -1), (dim_m + j - 1, 1)]), mul(&b(bj, Sign::Plus), &b(bi, Sign::Minus))));
            }
        }
        let bi = i as u32;
        evens.push((wt(&[(dim_m + i - 1, 2)]), mul(&b(bi, Sign::Plus), &b(bi, Sign::Plus))));
        evens.push((wt(&[(dim_m + i - 1, -2)]), mul(&b(bi, Sign::Minus), &b(bi, Sign::Minus))));
    }
    // so(2m+1) part
    for i in 1..=dim_m {
        for k in 1..=dim_m {
            if i < k {
                let (ai, ak) = (i as u32, k as u32);
                evens.push((wt(&[(i - 1, 1), (k - 1, -1)]), mul(&a(ai, Sign::Plus), &a(ak, Sign::Minus))));
                evens.push((wt(&[(i - 1, 1), (k - 1, 1)]), mul(&a(ai, Sign::Plus), &a(ak, Sign::Plus))));
                evens.push((wt(&[(i - 1, -1), (k - 1, -1)]), mul(&a(ai, Sign::Minus), &a(ak, Sign::Minus))));
                evens.push((wt(&[(i - 1, -1), (k - 1, 1)]), mul(&a(ak, Sign::Plus), &a(ai, Sign::Minus))));
            }
        }
        let ai = i as u32;
        evens.push((wt(&[(i - 1, 1)]), mul(&a0(), &a(ai, Sign::Plus))));
        evens.push((wt(&[(i - 1, -1)]), mul(&a0(), &a(ai, Sign::Minus))));
    }
    evens.sort_by(|x, y| x.0.cmp(&y.0));
    for (w, real) in evens {
        push(weight_name(&w, dim_m), Role::EvenRoot, w, real);
    }

    // Odd roots: a0-type first (j ascending, + before -), then fermion-boson
    for j in 1..=n {
        push(
            format!("F(+{j})"),
            Role::OddRoot,
            wt(&[(dim_m + j as usize - 1, 1)]),
            mul(&a0(), &b(j, Sign::Plus)),
        );
        push(
            format!("F(-{j})"),
            Role::OddRoot,
            wt(&[(dim_m + j as usize - 1, -1)]),
            mul(&a0(), &b(j, Sign::Minus)),
        );
    }
    for i in 1..=m {
        for si in [Sign::Plus, Sign::Minus] {
            for j in 1..=n {
                for sj in [Sign::Plus, Sign::Minus] {
                    push(
                        format!("G({}{},{}{})", si.symbol(), i, sj.symbol(), j),
                        Role::OddRoot,
                        wt(&[(i as usize - 1, si.as_i64()), (dim_m + j as usize - 1, sj.as_i64())]),
                        mul(&a(i, si), &b(j, sj)),
                    );
                }
            }
        }
    }

    for (id, e) in out.iter_mut().enumerate() {
        e.id = id;
    }
    Ok(out)
}

impl<K: Scalar> StructureConstants<K> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn id_of(&self, name: &str) -> Option<BasisId> {
        self.index.get(name).copied()
    }

    pub fn name_of(&self, id: BasisId) -> &str {
        &self.basis[id].name
    }

    pub fn even_odd_dims(&self) -> (usize, usize) {
        let odd = self.basis.iter().filter(|e| e.parity == 1).count();
        (self.basis.len() - odd, odd)
    }

    /// Coefficients of [X_i, X_j] in the basis.
    pub fn bracket(&self, i: BasisId, j: BasisId) -> &SparseVec<K> {
        &self.table[i][j]
    }

    /// Apply ad(X_i) to a sparse vector.
    pub fn ad(&self, i: BasisId, v: &SparseVec<K>) -> SparseVec<K> {
        let mut acc: BTreeMap<BasisId, K> = BTreeMap::new();
        for (z, c) in v {
            for (w, c2) in &self.table[i][*z] {
                let e = acc.entry(*w).or_insert_with(K::zero);
                *e = e.clone() + c.clone() * c2.clone();
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Expand an oscillator element exactly in the basis.
    pub fn expand(&self, x: &OscElement<K>) -> Result<SparseVec<K>, AlgebraError> {
        let mut rem = x.clone();
        let mut coeffs: BTreeMap<BasisId, K> = BTreeMap::new();
        // single-monomial realizations first (all roots)
        for e in &self.basis {
            if e.realization.terms.len() == 1 {
                let (mono, c0) = e.realization.terms.iter().next().unwrap();
                if let Some(c) = rem.terms.get(mono).cloned() {
                    let k = c / c0.clone();
                    coeffs.insert(e.id, k.clone());
                    rem = rem.sub(&e.realization.scale(&k));
                }
            }
        }
        // Cartan part: remaining diagonal quadratics and the unit
        let modes = x.modes;
        let (m, n) = (modes.m as usize, modes.n as usize);
        let mut fvec = vec![K::zero(); m]; // coefficient of F_i = a_i^+ a_i^-
        let mut nvec = vec![K::zero(); n]; // coefficient of N_j = b_j^+ b_j^-
        let mut scal = K::zero();
        let mut leftover = Vec::new();
        for (mono, c) in rem.terms.iter() {
            if mono.a0 == 0 && mono.degree() == 0 {
                scal = scal + c.clone();
            } else if mono.a0 == 0 && is_fermion_number(mono, m) {
                let i = (0..m).find(|&i| mono.fermions[2 * i] == 1).unwrap();
                fvec[i] = fvec[i].clone() + c.clone();
            } else if mono.a0 == 0 && is_boson_number(mono, n) {
                let j = (0..n).find(|&j| mono.bosons[2 * j] == 1).unwrap();
                nvec[j] = nvec[j].clone() + c.clone();
            } else {
                leftover.push((mono.clone(), c.clone()));
            }
        }
        if !leftover.is_empty() {
            return Err(AlgebraError::Integrity(format!(
                "element not expressible in basis; leftover term {}",
                leftover[0].0.display(modes)
            )));
        }
        // Solve Cartan coefficients and check the scalar matches exactly.
        let half = K::from_ratio(1, 2);
        let mut implied_scalar = K::zero();
        if modes.m == 0 {
            // H_k = N_k - N_{k+1} (k<n), H_n = N_n + 1/2
            // N-coefficients: nvec[j] = c_{j+1} - c_j  in 0-based telescoping
            let mut cs = vec![K::zero(); n];
            cs[0] = nvec[0].clone();
            for j in 1..n {
                cs[j] = nvec[j].clone() + cs[j - 1].clone();
            }
            implied_scalar = cs[n - 1].clone() * half;
            for (k, c) in cs.into_iter().enumerate() {
                if !c.is_zero() {
                    let id = self.id_of(&format!("H{}", k + 1)).unwrap();
                    coeffs.insert(id, c);
                }
            }
        } else {
            // K_i = F_i - 1/2, D_j = N_j + 1/2
            for (i, c) in fvec.iter().enumerate() {
                if !c.is_zero() {
                    let id = self.id_of(&format!("K{}", i + 1)).unwrap();
                    coeffs.insert(id, c.clone());
                    implied_scalar = implied_scalar - c.clone() * half.clone();
                }
            }
            for (j, c) in nvec.iter().enumerate() {
                if !c.is_zero() {
                    let id = self.id_of(&format!("D{}", j + 1)).unwrap();
                    coeffs.insert(id, c.clone());
                    implied_scalar = implied_scalar + c.clone() * half.clone();
                }
            }
        }
        if scal != implied_scalar {
            return Err(AlgebraError::Integrity(format!(
                "scalar residue {} does not match Cartan expansion (needs {})",
                scal, implied_scalar
            )));
        }
        Ok(coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }
}

fn is_fermion_number(mono: &OscMonomial, m: usize) -> bool {
    if mono.degree() != 2 {
        return false;
    }
    if mono.bosons.iter().any(|&e| e != 0) {
        return false;
    }
    (0..m).any(|i| mono.fermions[2 * i] == 1 && mono.fermions[2 * i + 1] == 1)
}

fn is_boson_number(mono: &OscMonomial, n: usize) -> bool {
    if mono.degree() != 2 {
        return false;
    }
    if mono.fermions.iter().any(|&e| e != 0) {
        return false;
    }
    (0..n).any(|j| mono.bosons[2 * j] == 1 && mono.bosons[2 * j + 1] == 1)
}

/// Compute the full structure-constant table by projecting oscillator brackets
/// onto the basis. Fails with an integrity error if any bracket escapes the
/// basis span (which would signal a realization bug).
pub fn structure_constants<K: Scalar>(m: u32, n: u32) -> Result<StructureConstants<K>, AlgebraError> {
    let basis = build_basis::<K>(m, n)?;
    let modes = Modes { m, n };
    let index: BTreeMap<String, BasisId> = basis.iter().map(|e| (e.name.clone(), e.id)).collect();
    let mut sc = StructureConstants { modes, basis, index, table: Vec::new() };
    let d = sc.dim();
    let mut table = vec![vec![Vec::new(); d]; d];
    for i in 0..d {
        for j in 0..d {
            let br = super_commutator(&sc.basis[i].realization, &sc.basis[j].realization);
            let coeffs = sc.expand(&br).map_err(|e| {
                AlgebraError::Integrity(format!(
                    "bracket [{}, {}]: {}",
                    sc.basis[i].name, sc.basis[j].name, e
                ))
            })?;
            table[i][j] = coeffs;
        }
    }
    sc.table = table;
    Ok(sc)
}

/// Report from a validation pass; `failures` lists offending items.
#[derive(Debug, Default)]
pub struct CheckReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Cartan eigenvalue pairing <alpha_k, wt> used by `cartan_eigenvalue_check`.
/// For B(0,n) this is Lemma 2.2's form (alpha_k = e_k - e_{k+1} for k < n,
/// alpha_n = e_n, with <e_i, e_j> = delta_ij). For m >= 1 the number-operator
/// Cartans act by the corresponding weight coordinate.
pub fn cartan_pairing<K: Scalar>(sc: &StructureConstants<K>, k: u32, weight: &[i64]) -> i64 {
    let (m, n) = (sc.modes.m, sc.modes.n);
    if m == 0 {
        if k < n {
            weight[(k - 1) as usize] - weight[k as usize]
        } else {
            weight[(n - 1) as usize]
        }
    } else {
        // Cartan index k enumerates K_1..K_m then D_1..D_n
        weight[(k - 1) as usize]
    }
}

/// Verify [H_k, E_alpha] = <alpha_k, alpha> E_alpha for every Cartan and every
/// root vector.
pub fn cartan_eigenvalue_check<K: Scalar>(sc: &StructureConstants<K>) -> CheckReport {
    let mut rep = CheckReport::default();
    for h in sc.basis.iter().filter(|e| matches!(e.role, Role::Cartan(_))) {
        let k = match h.role {
            Role::Cartan(k) => k,
            _ => unreachable!(),
        };
        for e in sc.basis.iter().filter(|e| !matches!(e.role, Role::Cartan(_))) {
            rep.checked += 1;
            let eig = cartan_pairing(sc, k, &e.weight);
            let expected: SparseVec<K> = if eig == 0 {
                Vec::new()
            } else {
                vec![(e.id, K::from_int(eig))]
            };
            if sc.table[h.id][e.id] != expected {
                rep.failures.push(format!(
                    "[{}, {}] != {} * {}",
                    h.name, e.name, eig, e.name
                ));
            }
        }
    }
    rep
}

/// Verify the super-Jacobi identity
/// [X,[Y,Z]] = [[X,Y],Z] + (-1)^{p(X)p(Y)} [Y,[X,Z]]
/// on all basis triples (exhaustive) or on a deterministic sample.
pub fn jacobi_check<K: Scalar>(sc: &StructureConstants<K>, sample: Option<usize>) -> CheckReport {
    let d = sc.dim();
    let mut rep = CheckReport::default();
    let triples: Vec<(usize, usize, usize)> = match sample {
        None => (0..d)
            .flat_map(|i| (0..d).flat_map(move |j| (0..d).map(move |k| (i, j, k))))
            .collect(),
        Some(count) => {
            // deterministic LCG sample; no RNG dependency needed for this
            let mut state: u64 = 0x9E3779B97F4A7C15;
            let mut next = || {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (state >> 33) as usize
            };
            (0..count).map(|_| (next() % d, next() % d, next() % d)).collect()
        }
    };
    for (x, y, z) in triples {
        rep.checked += 1;
        let lhs = sc.ad(x, &sc.table[y][z]);
        let mut rhs: BTreeMap<BasisId, K> = BTreeMap::new();
        for (w, c) in &sc.table[x][y] {
            for (t, c2) in &sc.table[*w][z] {
                let e = rhs.entry(*t).or_insert_with(K::zero);
                *e = e.clone() + c.clone() * c2.clone();
            }
        }
        let sgn = if sc.basis[x].parity == 1 && sc.basis[y].parity == 1 { -K::one() } else { K::one() };
        for (w, c) in sc.ad(y, &sc.table[x][z]) {
            let e = rhs.entry(w).or_insert_with(K::zero);
            *e = e.clone() + sgn.clone() * c;
        }
        let rhs: SparseVec<K> = rhs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if lhs != rhs {
            rep.failures.push(format!(
                "Jacobi fails at ({}, {}, {})",
                sc.basis[x].name, sc.basis[y].name, sc.basis[z].name
            ));
        }
    }
    rep
}

/// Weight additivity and super-antisymmetry of the full table.
pub fn table_consistency_check<K: Scalar>(sc: &StructureConstants<K>) -> CheckReport {
    let d = sc.dim();
    let mut rep = CheckReport::default();
    for i in 0..d {
        for j in 0..d {
            rep.checked += 1;
            let ws: Vec<i64> = sc.basis[i]
                .weight
                .iter()
                .zip(&sc.basis[j].weight)
                .map(|(a, b)| a + b)
                .collect();
            for (z, _) in &sc.table[i][j] {
                if sc.basis[*z].weight != ws {
                    rep.failures.push(format!(
                        "weight additivity fails at [{}, {}] -> {}",
                        sc.basis[i].name, sc.basis[j].name, sc.basis[*z].name
                    ));
                }
                if sc.basis[*z].parity != (sc.basis[i].parity + sc.basis[j].parity) % 2 {
                    rep.failures.push(format!(
                        "parity additivity fails at [{}, {}] -> {}",
                        sc.basis[i].name, sc.basis[j].name, sc.basis[*z].name
                    ));
                }
            }
            // super-antisymmetry
            let sgn = if sc.basis[i].parity == 1 && sc.basis[j].parity == 1 { K::one() } else { -K::one() };
            let mirrored: SparseVec<K> =
                sc.table[j][i].iter().map(|(z, c)| (*z, sgn.clone() * c.clone())).collect();
            if sc.table[i][j] != mirrored {
                rep.failures.push(format!(
                    "super-antisymmetry fails at [{}, {}]",
                    sc.basis[i].name, sc.basis[j].name
                ));
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    #[test]
    fn dimensions() {
        // B(0,2): 2n^2 + 3n = 14; B(0,1): 5; B(1,1): 12 (Appendix table)
        assert_eq!(structure_constants::<Rational>(0, 2).unwrap().dim(), 14);
        assert_eq!(structure_constants::<Rational>(0, 1).unwrap().dim(), 5);
        assert_eq!(structure_constants::<Rational>(1, 1).unwrap().dim(), 12);
        // B(2,1): 23, B(1,2): 25 (Appendix table)
        assert_eq!(structure_constants::<Rational>(2, 1).unwrap().dim(), 23);
        assert_eq!(structure_constants::<Rational>(1, 2).unwrap().dim(), 25);
    }

    #[test]
    fn root_counts_b0n() {
        // |even roots| = 2n^2, |odd roots| = 2n, Cartans n
        for n in 1..=4 {
            let sc = structure_constants::<Rational>(0, n).unwrap();
            let cartans = sc.basis.iter().filter(|e| matches!(e.role, Role::Cartan(_))).count();
            let evens = sc.basis.iter().filter(|e| matches!(e.role, Role::EvenRoot)).count();
            let odds = sc.basis.iter().filter(|e| matches!(e.role, Role::OddRoot)).count();
            assert_eq!(cartans, n as usize);
            assert_eq!(evens, 2 * (n as usize) * (n as usize));
            assert_eq!(odds, 2 * n as usize);
        }
    }

    #[test]
    fn root_multiplicity_one() {
        let sc = structure_constants::<Rational>(0, 3).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for e in sc.basis.iter().filter(|e| !matches!(e.role, Role::Cartan(_))) {
            assert!(seen.insert((e.weight.clone(), e.parity)), "duplicate root {:?}", e.weight);
        }
    }

    #[test]
    fn cartan_eigenvalues_lemma_2_2() {
        let sc = structure_constants::<Rational>(0, 2).unwrap();
        let rep = cartan_eigenvalue_check(&sc);
        assert!(rep.passed(), "{:?}", rep.failures);
        // spot values: [H_1, E_{d2}] = -E_{d2}; [H_2, E_{d2}] = +E_{d2}
        let h1 = sc.id_of("H1").unwrap();
        let h2 = sc.id_of("H2").unwrap();
        let f2 = sc.id_of("F(+2)").unwrap();
        assert_eq!(sc.bracket(h1, f2), &vec![(f2, Rational::from_int(-1))]);
        assert_eq!(sc.bracket(h2, f2), &vec![(f2, Rational::from_int(1))]);
        // [H_2, E_{d1}] = 0 at n=3 (orthogonality)
        let sc3 = structure_constants::<Rational>(0, 3).unwrap();
        let h2 = sc3.id_of("H2").unwrap();
        let f1 = sc3.id_of("F(+1)").unwrap();
        assert!(sc3.bracket(h2, f1).is_empty());
    }

    #[test]
    fn bracket_examples() {
        let sc = structure_constants::<Rational>(0, 2).unwrap();
        let h1 = sc.id_of("H1").unwrap();
        let h2 = sc.id_of("H2").unwrap();
        let f1 = sc.id_of("F(+1)").unwrap();
        // [H_1, E_{d1}] = +E_{d1}
        assert_eq!(sc.bracket(h1, f1), &vec![(f1, Rational::from_int(1))]);
        // Cartan subalgebra abelian
        assert!(sc.bracket(h1, h2).is_empty());
        // {F(+1), F(-1)} = H_1 + H_2  (= N_1 + 1/2)
        let fm1 = sc.id_of("F(-1)").unwrap();
        assert_eq!(
            sc.bracket(f1, fm1),
            &vec![(h1, Rational::from_int(1)), (h2, Rational::from_int(1))]
        );
    }

    #[test]
    fn jacobi_exhaustive_small() {
        for (m, n) in [(0, 1), (0, 2), (1, 1)] {
            let sc = structure_constants::<Rational>(m, n).unwrap();
            let rep = jacobi_check(&sc, None);
            assert!(rep.passed(), "B({},{}): {:?}", m, n, &rep.failures[..rep.failures.len().min(3)]);
        }
    }

    #[test]
    fn table_consistency() {
        for (m, n) in [(0, 2), (1, 1)] {
            let sc = structure_constants::<Rational>(m, n).unwrap();
            let rep = table_consistency_check(&sc);
            assert!(rep.passed(), "{:?}", &rep.failures[..rep.failures.len().min(3)]);
        }
    }
}
