//! Exact representation theory of the symmetric groups.
//!
//! Permutations of `[n]` are image tuples on `0..n`. Composition is
//! `(g ∘ h)(i) = g(h(i))` and every representation is a left action on column
//! vectors given by the matrices of the adjacent transpositions `s_1 … s_{n-1}`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::combinat::{factorial, hook_dimension, partitions_of, standard_tableaux, tableau_contents, Partition};
use crate::error::{Error, Result};
use crate::linalgq::{q, Q, RationalMatrix};

pub type Perm = Vec<usize>;

pub fn identity_perm(n: usize) -> Perm {
    (0..n).collect()
}

pub fn compose_perm(g: &[usize], h: &[usize]) -> Perm {
    h.iter().map(|&i| g[i]).collect()
}

pub fn inverse_perm(g: &[usize]) -> Perm {
    let mut inv = vec![0; g.len()];
    for (i, &x) in g.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

/// The transposition `s_i` (one-based `i`) as a permutation of `0..n`.
pub fn adjacent(n: usize, i: usize) -> Perm {
    let mut p = identity_perm(n);
    p.swap(i - 1, i);
    p
}

pub fn sign(g: &[usize]) -> i64 {
    let mut seen = vec![false; g.len()];
    let mut s = 1;
    for i in 0..g.len() {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = g[j];
            len += 1;
        }
        if len % 2 == 0 {
            s = -s;
        }
    }
    s
}

pub fn cycle_type_of(g: &[usize]) -> Partition {
    let mut seen = vec![false; g.len()];
    let mut parts = Vec::new();
    for i in 0..g.len() {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = g[j];
            len += 1;
        }
        parts.push(len);
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Partition::new(parts).expect("cycle lengths form a partition")
}

/// Adjacent transpositions, one-based, in the order they are applied to a
/// vector: `ρ(g) v = ρ(s_{w_k}) ⋯ ρ(s_{w_1}) v`.
pub fn perm_word(g: &[usize]) -> Vec<usize> {
    let mut w = g.to_vec();
    let mut word = Vec::new();
    let n = w.len();
    for pass in 0..n {
        let mut swapped = false;
        for i in 0..n.saturating_sub(1 + pass) {
            if w[i] > w[i + 1] {
                w.swap(i, i + 1);
                word.push(i + 1);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    word
}

/// `ρ(g) v` for a representation given by adjacent-transposition matrices.
pub fn apply_perm(gens: &[RationalMatrix], g: &[usize], v: &[Q]) -> Vec<Q> {
    perm_word(g).into_iter().fold(v.to_vec(), |acc, i| gens[i - 1].mul_vec(&acc))
}

/// `c ρ(g)` for a row vector `c`.
pub fn apply_perm_right(gens: &[RationalMatrix], g: &[usize], c: &[Q]) -> Vec<Q> {
    perm_word(g).into_iter().rev().fold(c.to_vec(), |acc, i| gens[i - 1].vec_mul(&acc))
}

pub fn perm_matrix(gens: &[RationalMatrix], dim: usize, g: &[usize]) -> RationalMatrix {
    perm_word(g)
        .into_iter()
        .fold(RationalMatrix::identity(dim), |acc, i| gens[i - 1].mul(&acc))
}

pub fn all_perms(n: usize) -> Vec<Perm> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, n: usize, out: &mut Vec<Perm>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for x in 0..n {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                rec(prefix, used, n, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], n, &mut out);
    out
}

/// Checks `s_i² = 1`, the braid relations and far commutation.
pub fn check_coxeter(dim: usize, gens: &[RationalMatrix]) -> Result<()> {
    let id = RationalMatrix::identity(dim);
    for (i, g) in gens.iter().enumerate() {
        if g.rows() != dim || g.cols() != dim {
            return Err(Error::Shape(format!("generator s_{} is not {dim}x{dim}", i + 1)));
        }
        if g.mul(g) != id {
            return Err(Error::Relation(format!("s_{} does not square to the identity", i + 1)));
        }
    }
    for i in 0..gens.len() {
        for j in (i + 1)..gens.len() {
            let (a, b) = (&gens[i], &gens[j]);
            if j == i + 1 {
                if a.mul(b).mul(a) != b.mul(a).mul(b) {
                    return Err(Error::Relation(format!("braid relation fails for s_{} s_{}", i + 1, j + 1)));
                }
            } else if a.mul(b) != b.mul(a) {
                return Err(Error::Relation(format!("s_{} and s_{} do not commute", i + 1, j + 1)));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleType {
    pub parts: Partition,
    pub class_size: u128,
}

impl CycleType {
    pub fn of(parts: Partition) -> Self {
        let n = parts.size();
        let mut denom: u128 = 1;
        let mut mult: BTreeMap<usize, usize> = BTreeMap::new();
        for &p in parts.parts() {
            denom *= p as u128;
            *mult.entry(p).or_default() += 1;
        }
        for &m in mult.values() {
            denom *= factorial(m);
        }
        CycleType { class_size: factorial(n) / denom, parts }
    }

    /// Representative with cycles on consecutive blocks: `(1 2 … μ₁)(μ₁+1 …)…`.
    pub fn representative(&self) -> Perm {
        let n = self.parts.size();
        let mut g = identity_perm(n);
        let mut start = 0;
        for &len in self.parts.parts() {
            for k in 0..len {
                g[start + k] = start + (k + 1) % len;
            }
            start += len;
        }
        g
    }

    /// Adjacent-transposition word for the representative, in application order.
    fn word(&self) -> Vec<usize> {
        // (a a+1 … b) = s_a s_{a+1} ⋯ s_{b-1}; the rightmost factor acts first.
        let mut word = Vec::new();
        let mut start = 1;
        for &len in self.parts.parts() {
            for i in (start..start + len - 1).rev() {
                word.push(i);
            }
            start += len;
        }
        word
    }
}

/// Conjugacy classes of `S_n`, identity class first.
pub fn cycle_types(n: usize) -> Vec<CycleType> {
    partitions_of(n).into_iter().rev().map(CycleType::of).collect()
}

type CharacterCache = Mutex<HashMap<(Vec<usize>, Vec<usize>), i64>>;

fn character_cache() -> &'static CharacterCache {
    static CACHE: OnceLock<CharacterCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `χ_λ(μ)` by the Murnaghan–Nakayama rule on beta-sets.
pub fn mn_character(lambda: &Partition, mu: &Partition) -> Result<i64> {
    if lambda.size() != mu.size() {
        return Err(Error::Invalid(format!(
            "character of a partition of {} on a class of S_{}",
            lambda.size(),
            mu.size()
        )));
    }
    Ok(mn_rec(lambda.parts(), mu.parts()))
}

fn mn_rec(lambda: &[usize], mu: &[usize]) -> i64 {
    if mu.is_empty() {
        return 1;
    }
    let key = (lambda.to_vec(), mu.to_vec());
    if let Some(&v) = character_cache().lock().unwrap().get(&key) {
        return v;
    }
    let k = mu[0];
    let r = lambda.len();
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &l)| l + r - 1 - i).collect();
    let mut total = 0;
    for (idx, &b) in beta.iter().enumerate() {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let between = beta.iter().filter(|&&c| c > b - k && c < b).count();
        let mut nb = beta.clone();
        nb[idx] = b - k;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let mut parts: Vec<usize> = nb.iter().enumerate().map(|(i, &x)| x - (r - 1 - i)).collect();
        while parts.last() == Some(&0) {
            parts.pop();
        }
        let s = if between % 2 == 0 { 1 } else { -1 };
        total += s * mn_rec(&parts, &mu[1..]);
    }
    character_cache().lock().unwrap().insert(key, total);
    total
}

#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub n: usize,
    pub shapes: Vec<Partition>,
    pub classes: Vec<CycleType>,
    /// `values[i][j] = χ_{shapes[i]}(classes[j])`.
    pub values: Vec<Vec<i64>>,
}

pub fn character_table(n: usize) -> Result<CharacterTable> {
    if !(1..=10).contains(&n) {
        return Err(Error::Invalid(format!("character tables are supported for 1 ≤ n ≤ 10, got {n}")));
    }
    let shapes = partitions_of(n);
    let classes = cycle_types(n);
    let values = shapes
        .iter()
        .map(|l| classes.iter().map(|c| mn_rec(l.parts(), c.parts.parts())).collect())
        .collect();
    Ok(CharacterTable { n, shapes, classes, values })
}

/// Seminormal-form matrices of the irreducible representation `L_λ`.
#[derive(Clone, Debug)]
pub struct IrrepMatrices {
    pub shape: Partition,
    pub generators: Vec<RationalMatrix>,
}

impl IrrepMatrices {
    pub fn dim(&self) -> usize {
        hook_dimension(&self.shape) as usize
    }
}

fn irrep_cache() -> &'static Mutex<HashMap<Partition, IrrepMatrices>> {
    static CACHE: OnceLock<Mutex<HashMap<Partition, IrrepMatrices>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Young's seminormal form in the last-letter basis of standard tableaux.
///
/// For a pair `T ≺ T'` exchanged by `s_i` with axial distance
/// `r = c_T(i+1) − c_T(i)`, the block is `[[1/r, 1 − 1/r²], [1, −1/r]]`.
pub fn irrep_matrices(lambda: &Partition) -> IrrepMatrices {
    if let Some(m) = irrep_cache().lock().unwrap().get(lambda) {
        return m.clone();
    }
    let n = lambda.size();
    let tabs = standard_tableaux(lambda);
    let index: HashMap<Vec<usize>, usize> = tabs.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    let d = tabs.len();
    let mut generators = Vec::with_capacity(n.saturating_sub(1));
    for i in 1..n {
        let mut m = RationalMatrix::zeros(d, d);
        for (a, t) in tabs.iter().enumerate() {
            let contents = tableau_contents(t);
            let (ri, rj) = (t[i - 1], t[i]);
            let r = contents[i] - contents[i - 1];
            if ri == rj {
                m.set(a, a, Q::one());
            } else if r == -1 && rj == ri + 1 {
                m.set(a, a, q(-1));
            } else {
                let mut swapped = t.clone();
                swapped.swap(i - 1, i);
                let b = index[&swapped];
                let inv_r = Q::new(1.into(), r.into());
                m.set(a, a, inv_r.clone());
                if a < b {
                    m.set(b, a, Q::one());
                } else {
                    m.set(b, a, Q::one() - &inv_r * &inv_r);
                }
            }
        }
        generators.push(m);
    }
    let out = IrrepMatrices { shape: lambda.clone(), generators };
    irrep_cache().lock().unwrap().insert(lambda.clone(), out.clone());
    out
}

/// Matrix of `ρ_λ(g)` for an arbitrary permutation.
pub fn irrep_perm_matrix(lambda: &Partition, g: &[usize]) -> RationalMatrix {
    let im = irrep_matrices(lambda);
    perm_matrix(&im.generators, im.dim(), g)
}

/// Element of the rational group algebra of `S_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    pub n: usize,
    pub terms: BTreeMap<Perm, Q>,
}

impl GroupAlgebraElement {
    pub fn zero(n: usize) -> Self {
        GroupAlgebraElement { n, terms: BTreeMap::new() }
    }

    pub fn basis(g: Perm) -> Self {
        let n = g.len();
        GroupAlgebraElement { n, terms: BTreeMap::from([(g, Q::one())]) }
    }

    pub fn one(n: usize) -> Self {
        Self::basis(identity_perm(n))
    }

    pub fn add_term(&mut self, g: Perm, c: Q) {
        let e = self.terms.entry(g).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for (g, a) in &self.terms {
            for (h, b) in &other.terms {
                out.add_term(compose_perm(g, h), a * b);
            }
        }
        out
    }

    pub fn scale(&self, s: &Q) -> Self {
        let mut out = Self::zero(self.n);
        if !s.is_zero() {
            out.terms = self.terms.iter().map(|(g, c)| (g.clone(), c * s)).collect();
        }
        out
    }

    pub fn is_idempotent(&self) -> bool {
        &self.mul(self) == self
    }

    /// Matrix of `x ↦ x · self` on the regular representation, basis `all_perms(n)`.
    pub fn right_multiplication_matrix(&self) -> RationalMatrix {
        let elems = all_perms(self.n);
        let index: HashMap<&Perm, usize> = elems.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let mut m = RationalMatrix::zeros(elems.len(), elems.len());
        for (j, x) in elems.iter().enumerate() {
            for (g, c) in &self.terms {
                let i = index[&compose_perm(x, g)];
                let cur = m.get(i, j) + c;
                m.set(i, j, cur);
            }
        }
        m
    }
}

/// Row stabiliser and column stabiliser of the row-reading tableau of `λ`.
fn young_groups(lambda: &Partition) -> (Vec<Perm>, Vec<Perm>) {
    let n = lambda.size();
    let mut row_of = vec![0; n];
    let mut col_of = vec![0; n];
    let mut k = 0;
    for (r, &len) in lambda.parts().iter().enumerate() {
        for c in 0..len {
            row_of[k] = r;
            col_of[k] = c;
            k += 1;
        }
    }
    let blocks = |key: &[usize]| -> Vec<Perm> {
        // Product of the symmetric groups on the fibres of `key`.
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, &b) in key.iter().enumerate() {
            groups.entry(b).or_default().push(i);
        }
        let mut out = vec![identity_perm(n)];
        for members in groups.values() {
            let mut next = Vec::new();
            for p in all_perms(members.len()) {
                for g in &out {
                    let mut h = g.clone();
                    for (a, &b) in p.iter().enumerate() {
                        h[members[a]] = members[b];
                    }
                    next.push(h);
                }
            }
            out = next;
        }
        out
    };
    (blocks(&row_of), blocks(&col_of))
}

/// Primitive idempotent `(f^λ/n!) a_λ b_λ` with `a_λ` the row symmetriser and
/// `b_λ` the signed column antisymmetriser. Its left ideal is `L_λ`.
pub fn young_symmetrizer(lambda: &Partition) -> GroupAlgebraElement {
    let n = lambda.size();
    let (rows, cols) = young_groups(lambda);
    let mut a = GroupAlgebraElement::zero(n);
    for g in rows {
        a.add_term(g, Q::one());
    }
    let mut b = GroupAlgebraElement::zero(n);
    for g in cols {
        let s = sign(&g);
        b.add_term(g, q(s));
    }
    let norm = Q::new((hook_dimension(lambda) as i64).into(), (factorial(n) as i64).into());
    a.mul(&b).scale(&norm)
}

/// Multiplicities of the irreducibles in the representation generated by
/// `gens`, from exact character inner products.
pub fn decompose_by_character(dim: usize, gens: &[RationalMatrix], n: usize) -> Result<BTreeMap<Partition, usize>> {
    if dim == 0 {
        return Ok(BTreeMap::new());
    }
    if gens.len() != n.saturating_sub(1) {
        return Err(Error::Invalid(format!("expected {} generators for S_{n}, got {}", n.saturating_sub(1), gens.len())));
    }
    check_coxeter(dim, gens)?;
    let classes = cycle_types(n);
    let traces: Vec<Q> = classes
        .iter()
        .map(|c| {
            c.word()
                .into_iter()
                .fold(RationalMatrix::identity(dim), |acc, i| gens[i - 1].mul(&acc))
                .trace()
        })
        .collect();
    let order = Q::from_integer((factorial(n) as i64).into());
    let mut out = BTreeMap::new();
    for shape in partitions_of(n) {
        let mut s = Q::zero();
        for (c, t) in classes.iter().zip(&traces) {
            let chi = mn_rec(shape.parts(), c.parts.parts());
            s += t * q(chi) * q(c.class_size as i64);
        }
        let m = s / &order;
        if !m.is_integer() || m < Q::zero() {
            return Err(Error::Relation(format!("character inner product with {shape} is {m}")));
        }
        let m: usize = m.to_integer().try_into().expect("small multiplicity");
        if m > 0 {
            out.insert(shape, m);
        }
    }
    Ok(out)
}

/// `(f^λ/n!) Σ_g χ_λ(g⁻¹) ρ(g)`, summed over the whole group (`n ≤ 6`).
pub fn isotypic_projector(lambda: &Partition, dim: usize, gens: &[RationalMatrix], n: usize) -> Result<RationalMatrix> {
    if n > 6 {
        return Err(Error::Invalid(format!("isotypic projector needs n ≤ 6, got {n}")));
    }
    if lambda.size() != n {
        return Err(Error::Invalid(format!("{lambda} is not a partition of {n}")));
    }
    if gens.len() != n.saturating_sub(1) {
        return Err(Error::Invalid(format!("expected {} generators", n.saturating_sub(1))));
    }
    let mut acc = RationalMatrix::zeros(dim, dim);
    // Breadth-first walk through the group, one matrix product per element.
    let mut seen: HashMap<Perm, RationalMatrix> = HashMap::new();
    let mut frontier = vec![identity_perm(n)];
    seen.insert(identity_perm(n), RationalMatrix::identity(dim));
    while let Some(g) = frontier.pop() {
        let mg = seen[&g].clone();
        let chi = mn_rec(lambda.parts(), cycle_type_of(&g).parts());
        if chi != 0 {
            acc = acc.add(&mg.scale(&q(chi)));
        }
        for i in 1..n {
            let h = compose_perm(&g, &adjacent(n, i));
            if !seen.contains_key(&h) {
                seen.insert(h.clone(), mg.mul(&gens[i - 1]));
                frontier.push(h);
            }
        }
    }
    let norm = Q::new((hook_dimension(lambda) as i64).into(), (factorial(n) as i64).into());
    Ok(acc.scale(&norm))
}

/// Adjacent-transposition matrices of the regular representation, basis `all_perms(n)`,
/// acting by left multiplication.
pub fn regular_representation(n: usize) -> Vec<RationalMatrix> {
    let elems = all_perms(n);
    let index: HashMap<&Perm, usize> = elems.iter().enumerate().map(|(i, g)| (g, i)).collect();
    (1..n)
        .map(|i| {
            let s = adjacent(n, i);
            let mut m = RationalMatrix::zeros(elems.len(), elems.len());
            for (j, g) in elems.iter().enumerate() {
                m.set(index[&compose_perm(&s, g)], j, Q::one());
            }
            m
        })
        .collect()
}

/// Permutation representation of `S_n` on `n` points.
pub fn natural_representation(n: usize) -> Vec<RationalMatrix> {
    (1..n)
        .map(|i| {
            let s = adjacent(n, i);
            let mut m = RationalMatrix::zeros(n, n);
            for (j, &x) in s.iter().enumerate() {
                m.set(x, j, Q::one());
            }
            m
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn class_sizes_match_enumeration() {
        for n in 1..=6 {
            let perms = all_perms(n);
            for c in cycle_types(n) {
                let count = perms.iter().filter(|g| cycle_type_of(g) == c.parts).count();
                assert_eq!(count as u128, c.class_size, "{}", c.parts);
                assert_eq!(cycle_type_of(&c.representative()), c.parts);
            }
        }
    }

    #[test]
    fn perm_words_reproduce_permutations() {
        for g in all_perms(5) {
            let rebuilt = perm_word(&g)
                .into_iter()
                .fold(identity_perm(5), |acc, i| compose_perm(&adjacent(5, i), &acc));
            assert_eq!(rebuilt, g);
        }
        for c in cycle_types(6) {
            let rebuilt = c.word().into_iter().fold(identity_perm(6), |acc, i| compose_perm(&adjacent(6, i), &acc));
            assert_eq!(rebuilt, c.representative());
        }
    }

    #[test]
    fn trivial_and_sign_characters() {
        for n in 1..=6 {
            for c in cycle_types(n) {
                assert_eq!(mn_character(&Partition::row(n), &c.parts).unwrap(), 1);
                let s = if (n - c.parts.len()) % 2 == 0 { 1 } else { -1 };
                assert_eq!(mn_character(&Partition::column(n), &c.parts).unwrap(), s);
            }
        }
        assert!(mn_character(&p("2,1"), &p("2")).is_err());
    }

    #[test]
    fn character_of_21_on_three_cycle_two_ways() {
        let via_rule = mn_character(&p("2,1"), &p("3")).unwrap();
        let m = irrep_perm_matrix(&p("2,1"), &[1, 2, 0]);
        assert_eq!(q(via_rule), m.trace());
        assert_eq!(via_rule, -1);
    }

    #[test]
    fn small_character_tables() {
        let t1 = character_table(1).unwrap();
        assert_eq!(t1.values, vec![vec![1]]);
        let t3 = character_table(3).unwrap();
        let first: Vec<i64> = t3.values.iter().map(|r| r[0]).collect();
        assert_eq!(first, vec![1, 2, 1]);
        assert_eq!(character_table(5).unwrap().values.len(), 7);
        assert!(character_table(0).is_err());
        assert!(character_table(11).is_err());
    }

    #[test]
    fn character_rows_orthonormal_n5() {
        let t = character_table(5).unwrap();
        let order = factorial(5) as i64;
        for i in 0..t.shapes.len() {
            for j in 0..t.shapes.len() {
                let s: i64 = (0..t.classes.len())
                    .map(|k| t.values[i][k] * t.values[j][k] * t.classes[k].class_size as i64)
                    .sum();
                assert_eq!(s, if i == j { order } else { 0 });
            }
        }
    }

    #[test]
    fn seminormal_small_cases() {
        assert_eq!(irrep_matrices(&p("2")).generators, vec![RationalMatrix::from_i64(&[&[1]])]);
        assert_eq!(irrep_matrices(&p("1,1")).generators, vec![RationalMatrix::from_i64(&[&[-1]])]);
        let m = irrep_matrices(&p("2,1"));
        check_coxeter(2, &m.generators).unwrap();
        assert_eq!(m.generators[0].trace(), Q::zero());
    }

    #[test]
    fn seminormal_relations_and_traces_up_to_6() {
        for n in 1..=6 {
            for l in partitions_of(n) {
                let m = irrep_matrices(&l);
                check_coxeter(m.dim(), &m.generators).unwrap_or_else(|e| panic!("{l}: {e}"));
                if n >= 2 {
                    let mut tp = vec![2];
                    tp.extend(std::iter::repeat_n(1, n - 2));
                    let chi = mn_character(&l, &Partition::new(tp).unwrap()).unwrap();
                    for g in &m.generators {
                        assert_eq!(g.trace(), q(chi), "{l}");
                    }
                }
            }
        }
    }

    #[test]
    fn young_symmetrizer_examples() {
        let e3 = young_symmetrizer(&p("3"));
        assert_eq!(e3.terms.len(), 6);
        assert!(e3.terms.values().all(|c| *c == Q::new(1.into(), 6.into())));
        let s3 = young_symmetrizer(&p("1,1,1"));
        for (g, c) in &s3.terms {
            assert_eq!(*c, Q::new(sign(g).into(), 6.into()));
        }
        let e21 = young_symmetrizer(&p("2,1"));
        assert!(e21.is_idempotent());
        assert_eq!(e21.right_multiplication_matrix().rank(), 2);
    }

    #[test]
    fn young_symmetrizers_are_idempotent_up_to_4() {
        for n in 1..=4 {
            for l in partitions_of(n) {
                let e = young_symmetrizer(&l);
                assert!(e.is_idempotent(), "{l}");
                assert_eq!(e.right_multiplication_matrix().rank() as u128, hook_dimension(&l));
            }
        }
    }

    #[test]
    fn decomposition_examples() {
        let reg = regular_representation(3);
        let d = decompose_by_character(6, &reg, 3).unwrap();
        assert_eq!(d, BTreeMap::from([(p("3"), 1), (p("2,1"), 2), (p("1,1,1"), 1)]));
        let nat = natural_representation(3);
        let d = decompose_by_character(3, &nat, 3).unwrap();
        assert_eq!(d, BTreeMap::from([(p("3"), 1), (p("2,1"), 1)]));
        assert!(decompose_by_character(0, &[], 3).unwrap().is_empty());
        let bad = vec![RationalMatrix::from_i64(&[&[2]]), RationalMatrix::from_i64(&[&[1]])];
        assert!(decompose_by_character(1, &bad, 3).is_err());
    }

    #[test]
    fn decomposing_an_irreducible_returns_itself() {
        for n in 1..=6 {
            for l in partitions_of(n) {
                let m = irrep_matrices(&l);
                let d = decompose_by_character(m.dim(), &m.generators, n).unwrap();
                assert_eq!(d, BTreeMap::from([(l.clone(), 1)]));
            }
        }
    }

    #[test]
    fn projector_examples() {
        let reg = regular_representation(3);
        let p3 = isotypic_projector(&p("3"), 6, &reg, 3).unwrap();
        assert_eq!(p3.rank(), 1);
        let p21 = isotypic_projector(&p("2,1"), 6, &reg, 3).unwrap();
        assert_eq!(p21.rank(), 4);
        assert_eq!(p21.mul(&p21), p21);
        let nat = natural_representation(3);
        assert!(isotypic_projector(&p("1,1,1"), 3, &nat, 3).unwrap().is_zero());
        assert!(isotypic_projector(&p("7"), 1, &[], 7).is_err());
    }

    #[test]
    fn dimension_squares_sum_to_order() {
        for n in 0..=8 {
            let s: u128 = partitions_of(n).iter().map(|l| hook_dimension(l).pow(2)).sum();
            assert_eq!(s, factorial(n));
        }
    }
}
