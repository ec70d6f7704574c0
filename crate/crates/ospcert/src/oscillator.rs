//! Normal-ordered oscillator algebra: the fermion a0 (a0^2 = 1/2), fermion pairs
//! a_i^+/a_i^- for m >= 1, and boson pairs b_j^+/b_j^-.
//!
//! Conventions (fixed once, recorded in generated file headers):
//!   [b_j^-, b_k^+] = delta_jk        so normal_order(b^- b^+) = b^+ b^- + 1
//!   {a_i^+, a_k^-} = delta_ik,  {a_i^s, a_k^s} = 0,  {a_i^s, a0} = 0
//!   a0^2 = 1/2; bosons commute with all fermions
//! PBW order: a0 first, then a_1^+, a_1^-, ..., a_m^+, a_m^-, then b_1^+, b_1^-, ...
//! (creation left of annihilation within each mode).

use crate::field::Scalar;
use std::collections::BTreeMap;
use std::fmt;

pub type Parity = u8;

/// Sign tag for paired generators: `Plus` is the creation-side generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// A single oscillator generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OscGenerator {
    /// The auxiliary fermion a0 (odd, weight zero).
    A0,
    /// Fermion a_i^sign, i in 1..=m (odd, weight +-eps_i).
    Fermion(u32, Sign),
    /// Boson b_j^sign, j in 1..=n (even, weight +-delta_j).
    Boson(u32, Sign),
}

impl OscGenerator {
    pub fn parity(&self) -> Parity {
        match self {
            OscGenerator::A0 | OscGenerator::Fermion(..) => 1,
            OscGenerator::Boson(..) => 0,
        }
    }
}

/// Mode signature (m fermion pairs, n boson pairs). All monomials of one
/// computation share a signature; mixing them is a usage bug.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Modes {
    pub m: u32,
    pub n: u32,
}

/// Normal-ordered monomial: a0 exponent (0/1), fermion occupation bits in
/// generator order, boson exponents in generator order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OscMonomial {
    pub a0: u8,
    /// fermion exponents, length 2m: [a_1^+, a_1^-, a_2^+, ...], each 0 or 1
    pub fermions: Vec<u8>,
    /// boson exponents, length 2n: [b_1^+, b_1^-, b_2^+, ...]
    pub bosons: Vec<u32>,
}

impl OscMonomial {
    pub fn unit(modes: Modes) -> Self {
        OscMonomial {
            a0: 0,
            fermions: vec![0; 2 * modes.m as usize],
            bosons: vec![0; 2 * modes.n as usize],
        }
    }

    pub fn parity(&self) -> Parity {
        ((self.a0 as u32 + self.fermions.iter().map(|&e| e as u32).sum::<u32>()) % 2) as u8
    }

    /// Total count of odd generators (a0 plus fermions).
    pub fn odd_degree(&self) -> u32 {
        self.a0 as u32 + self.fermions.iter().map(|&e| e as u32).sum::<u32>()
    }

    /// Weight vector of length m + n: fermion coordinates first, then boson.
    pub fn weight(&self, modes: Modes) -> Vec<i64> {
        let (m, n) = (modes.m as usize, modes.n as usize);
        let mut w = vec![0i64; m + n];
        for i in 0..m {
            w[i] = self.fermions[2 * i] as i64 - self.fermions[2 * i + 1] as i64;
        }
        for j in 0..n {
            w[m + j] = self.bosons[2 * j] as i64 - self.bosons[2 * j + 1] as i64;
        }
        w
    }

    pub fn degree(&self) -> u32 {
        self.odd_degree() + self.bosons.iter().sum::<u32>()
    }

    fn fermion_list(&self) -> Vec<usize> {
        self.fermions
            .iter()
            .enumerate()
            .filter(|(_, &e)| e == 1)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn display(&self, _modes: Modes) -> String {
        let mut parts = Vec::new();
        if self.a0 == 1 {
            parts.push("a0".to_string());
        }
        for (slot, &e) in self.fermions.iter().enumerate() {
            if e == 1 {
                let mode = slot / 2 + 1;
                let s = if slot % 2 == 0 { '+' } else { '-' };
                parts.push(format!("a{}{}", mode, s));
            }
        }
        for (slot, &e) in self.bosons.iter().enumerate() {
            if e > 0 {
                let mode = slot / 2 + 1;
                let s = if slot % 2 == 0 { '+' } else { '-' };
                if e == 1 {
                    parts.push(format!("b{}{}", mode, s));
                } else {
                    parts.push(format!("b{}{}^{}", mode, s, e));
                }
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" ")
        }
    }
}

/// Linear combination of normal-ordered monomials; no stored zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct OscElement<K: Scalar> {
    pub modes: Modes,
    pub terms: BTreeMap<OscMonomial, K>,
}

impl<K: Scalar> fmt::Debug for OscElement<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("({})*{}", c, m.display(self.modes)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<K: Scalar> OscElement<K> {
    pub fn zero(modes: Modes) -> Self {
        OscElement { modes, terms: BTreeMap::new() }
    }

    pub fn one(modes: Modes) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(OscMonomial::unit(modes), K::one());
        OscElement { modes, terms }
    }

    pub fn generator(modes: Modes, g: OscGenerator) -> Self {
        let mut mono = OscMonomial::unit(modes);
        match g {
            OscGenerator::A0 => mono.a0 = 1,
            OscGenerator::Fermion(i, s) => {
                assert!(i >= 1 && i <= modes.m, "fermion index out of range");
                let slot = 2 * (i as usize - 1) + if s == Sign::Plus { 0 } else { 1 };
                mono.fermions[slot] = 1;
            }
            OscGenerator::Boson(j, s) => {
                assert!(j >= 1 && j <= modes.n, "boson index out of range");
                let slot = 2 * (j as usize - 1) + if s == Sign::Plus { 0 } else { 1 };
                mono.bosons[slot] = 1;
            }
        }
        let mut terms = BTreeMap::new();
        terms.insert(mono, K::one());
        OscElement { modes, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mono: OscMonomial, c: K) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.modes, other.modes);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return OscElement::zero(self.modes);
        }
        OscElement {
            modes: self.modes,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x.clone() * c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&(-K::one())))
    }

    /// Parity if homogeneous, None otherwise (or for zero).
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(|m| m.parity());
        let first = it.next()?;
        if it.all(|p| p == first) {
            Some(first)
        } else {
            None
        }
    }

    /// Weight if all monomials share one, None otherwise (or for zero).
    pub fn weight(&self) -> Option<Vec<i64>> {
        let mut it = self.terms.keys().map(|m| m.weight(self.modes));
        let first = it.next()?;
        if it.all(|w| w == first) {
            Some(first)
        } else {
            None
        }
    }
}

fn binom(a: u32, b: u32) -> i64 {
    if b > a {
        return 0;
    }
    let mut r: i64 = 1;
    for k in 0..b {
        r = r * (a - k) as i64 / (k + 1) as i64;
    }
    r
}

fn factorial(a: u32) -> i64 {
    (1..=a as i64).product::<i64>().max(1)
}

/// Merge two ordered fermion words (slot lists) with Clifford relations.
/// Returns signed ordered words; coefficients stay +-1.
/// Slot parity: even slot = a_i^+, odd slot = a_i^- of mode slot/2.
fn clifford_merge(w1: &[usize], w2: &[usize]) -> Vec<(i64, Vec<usize>)> {
    let mut results: Vec<(i64, Vec<usize>)> = vec![(1, w1.to_vec())];
    for &g in w2 {
        let mut next: Vec<(i64, Vec<usize>)> = Vec::new();
        for (sign, word) in results {
            // bubble g from the right end of `word` to its place
            let mut stack: Vec<(i64, Vec<usize>, usize)> = vec![(sign, word, g)];
            while let Some((s, w, g)) = stack.pop() {
                // find insertion: walk from right
                let mut pos = w.len();
                let mut s = s;
                let mut dead = false;
                let mut produced_contraction: Option<(i64, Vec<usize>)> = None;
                loop {
                    if pos == 0 {
                        break;
                    }
                    let h = w[pos - 1];
                    if h == g {
                        dead = true; // same generator squared
                        break;
                    }
                    if h < g {
                        break; // ordered
                    }
                    // h > g: same mode pair means h = a_i^-, g = a_i^+
                    if h / 2 == g / 2 {
                        // a^- a^+ = 1 - a^+ a^-  : contraction branch drops both
                        let mut wc = w.clone();
                        wc.remove(pos - 1);
                        produced_contraction = Some((s, wc));
                        s = -s;
                        pos -= 1;
                    } else {
                        s = -s;
                        pos -= 1;
                    }
                }
                if let Some((sc, wc)) = produced_contraction {
                    // contraction: word without h and without g (g not yet inserted)
                    next.push((sc, wc));
                }
                if !dead {
                    let mut w2 = w.clone();
                    w2.insert(pos, g);
                    next.push((s, w2));
                }
            }
        }
        results = next;
    }
    results
}

/// Product of two normal-ordered monomials, returned normal-ordered.
pub fn mono_mul<K: Scalar>(modes: Modes, m1: &OscMonomial, m2: &OscMonomial) -> OscElement<K> {
    // layout: a0^e F1 B1 * a0^f F2 B2
    // B1 commutes with a0^f and F2 (bosons are even and commute with fermions).
    // a0^f moves left past F1: sign (-1)^{|F1| * f}.
    let f1 = m1.fermion_list();
    let f2 = m2.fermion_list();
    let mut sign: i64 = 1;
    if m2.a0 == 1 && f1.len() % 2 == 1 {
        sign = -sign;
    }
    let a0_total = m1.a0 + m2.a0;
    let (a0_exp, a0_coeff) = if a0_total == 2 { (0u8, K::from_ratio(1, 2)) } else { (a0_total, K::one()) };

    let fermion_terms = clifford_merge(&f1, &f2);

    // bosons per mode: b+^p1 b-^q1 * b+^p2 b-^q2,
    // reorder b-^q1 b+^p2 = sum_k k! C(q1,k) C(p2,k) b+^{p2-k} b-^{q1-k}
    let n = modes.n as usize;
    let mut per_mode: Vec<Vec<(i64, u32, u32)>> = Vec::with_capacity(n);
    for j in 0..n {
        let (p1, q1) = (m1.bosons[2 * j], m1.bosons[2 * j + 1]);
        let (p2, q2) = (m2.bosons[2 * j], m2.bosons[2 * j + 1]);
        let kmax = q1.min(p2);
        let mut opts = Vec::with_capacity(kmax as usize + 1);
        for k in 0..=kmax {
            let c = factorial(k) * binom(q1, k) * binom(p2, k);
            opts.push((c, p1 + p2 - k, q1 + q2 - k));
        }
        per_mode.push(opts);
    }

    let mut out = OscElement::zero(modes);
    let mut choice = vec![0usize; n];
    loop {
        let mut coeff: i64 = sign;
        let mut bosons = vec![0u32; 2 * n];
        for j in 0..n {
            let (c, p, q) = per_mode[j][choice[j]];
            coeff *= c;
            bosons[2 * j] = p;
            bosons[2 * j + 1] = q;
        }
        for (fsign, fword) in &fermion_terms {
            let mut fermions = vec![0u8; 2 * modes.m as usize];
            for &slot in fword {
                fermions[slot] = 1;
            }
            let mono = OscMonomial { a0: a0_exp, fermions, bosons: bosons.clone() };
            out.add_term(mono, a0_coeff.clone() * K::from_int(coeff * fsign));
        }
        // advance mixed-radix choice
        let mut j = 0;
        loop {
            if j == n {
                return out;
            }
            choice[j] += 1;
            if choice[j] < per_mode[j].len() {
                break;
            }
            choice[j] = 0;
            j += 1;
        }
    }
}

/// Product of two elements (normal-ordered result).
pub fn mul<K: Scalar>(x: &OscElement<K>, y: &OscElement<K>) -> OscElement<K> {
    assert_eq!(x.modes, y.modes);
    let mut out = OscElement::zero(x.modes);
    for (m1, c1) in &x.terms {
        for (m2, c2) in &y.terms {
            let t = mono_mul::<K>(x.modes, m1, m2);
            for (m, c) in t.terms {
                out.add_term(m, c * c1.clone() * c2.clone());
            }
        }
    }
    out
}

/// Normal-order a raw word of generators with a scalar, e.g. for tests and
/// realization construction. Total rewriting; always succeeds.
pub fn normal_order<K: Scalar>(modes: Modes, coeff: K, word: &[OscGenerator]) -> OscElement<K> {
    let mut acc = OscElement::one(modes).scale(&coeff);
    for &g in word {
        acc = mul(&acc, &OscElement::generator(modes, g));
    }
    acc
}

/// Super-commutator [x, y] = xy - (-1)^{p(x)p(y)} yx for homogeneous x, y.
pub fn super_commutator<K: Scalar>(x: &OscElement<K>, y: &OscElement<K>) -> OscElement<K> {
    let px = x.parity().expect("super_commutator: x not parity-homogeneous");
    let py = y.parity().expect("super_commutator: y not parity-homogeneous");
    let xy = mul(x, y);
    let yx = mul(y, x);
    if px == 1 && py == 1 {
        xy.add(&yx)
    } else {
        xy.sub(&yx)
    }
}

/// Symmetrized product x o y = (xy + yx)/2.
pub fn sym_product<K: Scalar>(x: &OscElement<K>, y: &OscElement<K>) -> OscElement<K> {
    mul(x, y).add(&mul(y, x)).scale(&K::from_ratio(1, 2))
}

/// Deformation parameter direction gb_{f, b_j^s}: one per (odd generator, boson
/// generator) pair; 2n(2m+1) in total.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GbIndex {
    /// Paired odd generator: A0 or Fermion(i, sign).
    pub fermion: OscGenerator,
    /// Boson mode j (1-based).
    pub j: u32,
    /// Boson sign s in gb_{f, b_j^s}.
    pub s: Sign,
}

impl GbIndex {
    pub fn all(modes: Modes) -> Vec<GbIndex> {
        let mut out = Vec::new();
        let mut fermions = vec![OscGenerator::A0];
        for i in 1..=modes.m {
            fermions.push(OscGenerator::Fermion(i, Sign::Plus));
            fermions.push(OscGenerator::Fermion(i, Sign::Minus));
        }
        for f in fermions {
            for j in 1..=modes.n {
                for s in [Sign::Plus, Sign::Minus] {
                    out.push(GbIndex { fermion: f, j, s });
                }
            }
        }
        out
    }

    pub fn label(&self) -> String {
        let f = match self.fermion {
            OscGenerator::A0 => "a0".to_string(),
            OscGenerator::Fermion(i, s) => format!("a{}{}", i, s.symbol()),
            OscGenerator::Boson(..) => unreachable!("boson cannot label a gb direction"),
        };
        format!("gb({},b{}{})", f, self.j, self.s.symbol())
    }

    /// Weight sector of this direction's gamma-entries. The tail map pairs f
    /// with its Clifford dual, so the sector is s*delta_j - wt(f): the paper's
    /// short-root sectors +-delta_j for f = a0, and s*delta_j -+ eps_i for
    /// f = a_i^+-.
    pub fn sector(&self, modes: Modes) -> Vec<i64> {
        let (m, n) = (modes.m as usize, modes.n as usize);
        let mut w = vec![0i64; m + n];
        if let OscGenerator::Fermion(i, t) = self.fermion {
            w[i as usize - 1] = -t.as_i64();
        }
        w[m + self.j as usize - 1] = self.s.as_i64();
        w
    }
}

/// Clifford pairing <f, f'> between odd generators: <a0,a0> = 1,
/// <a_i^+, a_i^-> = <a_i^-, a_i^+> = 1, all else 0.
fn odd_pairing(f: OscGenerator, g: OscGenerator) -> i64 {
    match (f, g) {
        (OscGenerator::A0, OscGenerator::A0) => 1,
        (OscGenerator::Fermion(i, s), OscGenerator::Fermion(k, t)) if i == k && s != t => 1,
        _ => 0,
    }
}

/// The symplectic dual Omega(b_j^+) = b_j^-, Omega(b_j^-) = -b_j^+ as an element.
pub fn symplectic_dual<K: Scalar>(modes: Modes, j: u32, s: Sign) -> OscElement<K> {
    let e = OscElement::generator(modes, OscGenerator::Boson(j, s.flip()));
    match s {
        Sign::Plus => e,
        Sign::Minus => e.scale(&(-K::one())),
    }
}

/// The deformation tail map r_s per parameter direction: on a monomial with a
/// single odd generator f' and boson part beta,
///     r_{gb(f, b_j^s)}( f' * beta ) = <f, f'> * Omega(b_j^s) o beta ;
/// even inputs map to zero. This is the substitution's first-order content at
/// the oscillator level; basis projection and the slot corrections happen in
/// the deformation layer.
pub fn deformation_tail<K: Scalar>(dir: GbIndex, x: &OscElement<K>) -> OscElement<K> {
    let modes = x.modes;
    let om = symplectic_dual::<K>(modes, dir.j, dir.s);
    let mut out = OscElement::zero(modes);
    for (mono, c) in &x.terms {
        match mono.odd_degree() {
            deg if deg % 2 == 0 => continue, // even part maps to zero
            1 => {}
            _ => panic!("deformation_tail: monomial with odd degree > 1 is not a realization"),
        }
        // identify the odd generator and strip it
        let fprime = if mono.a0 == 1 {
            OscGenerator::A0
        } else {
            let slot = mono.fermions.iter().position(|&e| e == 1).unwrap();
            let i = (slot / 2 + 1) as u32;
            let s = if slot % 2 == 0 { Sign::Plus } else { Sign::Minus };
            OscGenerator::Fermion(i, s)
        };
        let pair = odd_pairing(dir.fermion, fprime);
        if pair == 0 {
            continue;
        }
        let mut beta_mono = mono.clone();
        beta_mono.a0 = 0;
        beta_mono.fermions = vec![0; beta_mono.fermions.len()];
        let mut beta = OscElement::zero(modes);
        beta.add_term(beta_mono, c.clone() * K::from_int(pair));
        out = out.add(&sym_product(&om, &beta));
    }
    out
}

/// Per-direction first-order deformation of the super-commutator at the
/// oscillator level: the coboundary of `deformation_tail` with the Def-2.4
/// sign conventions,
///   gamma_s(x,y) = (-1)^{p(x)} [x, r_s(y)] - (-1)^{(p(x)+1)p(y)} [y, r_s(x)] - r_s([x,y]).
/// Even-even pairs return the empty map. The returned element per direction has
/// parity p(x)+p(y)+1.
pub fn gamma_substitute<K: Scalar>(
    x: &OscElement<K>,
    y: &OscElement<K>,
) -> BTreeMap<GbIndex, OscElement<K>> {
    let modes = x.modes;
    let px = x.parity().expect("gamma_substitute: x not parity-homogeneous");
    let py = y.parity().expect("gamma_substitute: y not parity-homogeneous");
    let mut out = BTreeMap::new();
    if px == 0 && py == 0 {
        return out;
    }
    let bracket = super_commutator(x, y);
    for dir in GbIndex::all(modes) {
        let mut term = OscElement::zero(modes);
        let ry = deformation_tail(dir, y);
        if !ry.is_zero() {
            let mut t = super_commutator(x, &ry);
            if px == 1 {
                t = t.scale(&(-K::one()));
            }
            term = term.add(&t);
        }
        let rx = deformation_tail(dir, x);
        if !rx.is_zero() {
            let t = super_commutator(y, &rx);
            let s = if ((px + 1) * py) % 2 == 1 { K::one() } else { -K::one() };
            term = term.add(&t.scale(&s));
        }
        let rb = deformation_tail(dir, &bracket);
        term = term.sub(&rb);
        if !term.is_zero() {
            out.insert(dir, term);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    fn modes0(n: u32) -> Modes {
        Modes { m: 0, n }
    }

    fn gen(modes: Modes, g: OscGenerator) -> OscElement<Rational> {
        OscElement::generator(modes, g)
    }

    #[test]
    fn boson_reorder_standard_convention() {
        // normal_order(b1^- b1^+) = b1^+ b1^- + 1
        let md = modes0(1);
        let lhs = normal_order::<Rational>(
            md,
            Rational::from_int(1),
            &[OscGenerator::Boson(1, Sign::Minus), OscGenerator::Boson(1, Sign::Plus)],
        );
        let expected = mul(
            &gen(md, OscGenerator::Boson(1, Sign::Plus)),
            &gen(md, OscGenerator::Boson(1, Sign::Minus)),
        )
        .add(&OscElement::one(md));
        assert_eq!(lhs, expected);
    }

    #[test]
    fn a0_squares_to_half() {
        let md = modes0(1);
        let sq = normal_order::<Rational>(md, Rational::from_int(1), &[OscGenerator::A0, OscGenerator::A0]);
        assert_eq!(sq, OscElement::one(md).scale(&Rational::from_ratio(1, 2)));
    }

    #[test]
    fn ordered_boson_product_is_identity_on_word() {
        // b1^+ b2^+ is already ordered
        let md = modes0(2);
        let w = normal_order::<Rational>(
            md,
            Rational::from_int(1),
            &[OscGenerator::Boson(1, Sign::Plus), OscGenerator::Boson(2, Sign::Plus)],
        );
        assert_eq!(w.terms.len(), 1);
        let (mono, c) = w.terms.iter().next().unwrap();
        assert_eq!(c, &Rational::from_int(1));
        assert_eq!(mono.bosons, vec![1, 0, 1, 0]);
    }

    #[test]
    fn normal_order_idempotent() {
        let md = modes0(2);
        let word = [
            OscGenerator::Boson(2, Sign::Minus),
            OscGenerator::A0,
            OscGenerator::Boson(1, Sign::Minus),
            OscGenerator::Boson(2, Sign::Plus),
            OscGenerator::Boson(2, Sign::Plus),
            OscGenerator::A0,
        ];
        let e = normal_order::<Rational>(md, Rational::from_ratio(3, 7), &word);
        // re-normal-ordering each monomial is the identity
        let mut again = OscElement::zero(md);
        for (mono, c) in &e.terms {
            let t = mono_mul::<Rational>(md, &OscMonomial::unit(md), mono);
            for (m2, c2) in t.terms {
                again.add_term(m2, c2 * c.clone());
            }
        }
        assert_eq!(e, again);
    }

    #[test]
    fn fermion_clifford_relations() {
        let md = Modes { m: 2, n: 0 };
        // a1^- a1^+ = 1 - a1^+ a1^-
        let lhs = normal_order::<Rational>(
            md,
            Rational::from_int(1),
            &[OscGenerator::Fermion(1, Sign::Minus), OscGenerator::Fermion(1, Sign::Plus)],
        );
        let expected = OscElement::one(md).sub(&mul(
            &gen(md, OscGenerator::Fermion(1, Sign::Plus)),
            &gen(md, OscGenerator::Fermion(1, Sign::Minus)),
        ));
        assert_eq!(lhs, expected);
        // a1^+ a1^+ = 0
        let sq = normal_order::<Rational>(
            md,
            Rational::from_int(1),
            &[OscGenerator::Fermion(1, Sign::Plus), OscGenerator::Fermion(1, Sign::Plus)],
        );
        assert!(sq.is_zero());
        // a2^+ a1^+ = -a1^+ a2^+
        let lhs = normal_order::<Rational>(
            md,
            Rational::from_int(1),
            &[OscGenerator::Fermion(2, Sign::Plus), OscGenerator::Fermion(1, Sign::Plus)],
        );
        let rhs = normal_order::<Rational>(
            md,
            Rational::from_int(-1),
            &[OscGenerator::Fermion(1, Sign::Plus), OscGenerator::Fermion(2, Sign::Plus)],
        );
        assert_eq!(lhs, rhs);
        // a0 anticommutes with fermions
        let lhs = normal_order::<Rational>(
            Modes { m: 1, n: 0 },
            Rational::from_int(1),
            &[OscGenerator::Fermion(1, Sign::Plus), OscGenerator::A0],
        );
        let rhs = normal_order::<Rational>(
            Modes { m: 1, n: 0 },
            Rational::from_int(-1),
            &[OscGenerator::A0, OscGenerator::Fermion(1, Sign::Plus)],
        );
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn super_commutator_antisymmetry_even_even() {
        let md = modes0(2);
        let x = mul(&gen(md, OscGenerator::Boson(1, Sign::Plus)), &gen(md, OscGenerator::Boson(2, Sign::Plus)));
        assert!(super_commutator(&x, &x).is_zero());
    }

    #[test]
    fn gamma_substitute_even_even_empty() {
        let md = modes0(2);
        let x = mul(&gen(md, OscGenerator::Boson(1, Sign::Plus)), &gen(md, OscGenerator::Boson(1, Sign::Plus)));
        let y = mul(&gen(md, OscGenerator::Boson(1, Sign::Minus)), &gen(md, OscGenerator::Boson(1, Sign::Minus)));
        assert!(gamma_substitute(&x, &y).is_empty());
    }

    #[test]
    fn gamma_substitute_parity_shift() {
        // per-direction outputs have parity p(x)+p(y)+1
        let md = modes0(2);
        let h1 = mul(&gen(md, OscGenerator::Boson(1, Sign::Plus)), &gen(md, OscGenerator::Boson(1, Sign::Minus)))
            .sub(&mul(&gen(md, OscGenerator::Boson(2, Sign::Plus)), &gen(md, OscGenerator::Boson(2, Sign::Minus))));
        let f1 = mul(&gen(md, OscGenerator::A0), &gen(md, OscGenerator::Boson(1, Sign::Plus)));
        for (_, e) in gamma_substitute(&h1, &f1) {
            assert_eq!(e.parity(), Some(0)); // 0 + 1 + 1 = 0 mod 2
        }
        for (_, e) in gamma_substitute(&f1, &f1) {
            assert_eq!(e.parity(), Some(1)); // 1 + 1 + 1 = 1 mod 2
        }
    }
}
