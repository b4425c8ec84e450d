//! The OI-modules `K_n ⊆ P(n)` cut out by coface differences, and their
//! comparison with the simple saturated modules built by `ν⁻¹`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::combinat::binomial;
use crate::error::{Error, Result};
use crate::linalgq::{Subspace, Q};
use crate::modcore::{free_module, hom_space, quotient, submodule, TruncatedModule};
use crate::nakayama::{composition_factors_sheaf, simple_saturated_oi, SheafFactor};
use crate::skelcat::{compose, hom_index, hom_set, CatKind, Injection};

/// `α_{n,i} − α_{n,i+1}` as a vector of `P(n)_{n+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CofaceDifference {
    pub n: usize,
    pub i: usize,
    pub element: Vec<Q>,
}

impl CofaceDifference {
    pub fn new(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::Invalid(format!("coface difference index {i} outside [1, {n}]")));
        }
        let mut element = vec![Q::zero(); n + 1];
        element[hom_index(CatKind::Oi, &Injection::coface(n, i))] += Q::one();
        element[hom_index(CatKind::Oi, &Injection::coface(n, i + 1))] -= Q::one();
        Ok(CofaceDifference { n, i, element })
    }

    /// Span of `β ∘ (α_{n,i} − α_{n,i+1})` over `β : [n+1] → [d]`.
    pub fn ideal_slice(&self, d: usize) -> Subspace {
        let n = self.n;
        let width = hom_set(CatKind::Oi, n, d).len();
        let (a, b) = (Injection::coface(n, self.i), Injection::coface(n, self.i + 1));
        let vecs: Vec<Vec<Q>> = hom_set(CatKind::Oi, n + 1, d)
            .iter()
            .map(|beta| {
                let mut v = vec![Q::zero(); width];
                v[hom_index(CatKind::Oi, &compose(beta, &a).expect("composable"))] += Q::one();
                v[hom_index(CatKind::Oi, &compose(beta, &b).expect("composable"))] -= Q::one();
                v
            })
            .collect();
        Subspace::from_vectors(width, &vecs)
    }
}

/// Degreewise subspaces `K_n ⊆ P(n)`: the intersection of the ideals `K_{n,i}`, `i ∈ [n]`.
pub fn kn_spaces(n: usize, window: usize) -> Result<Vec<Subspace>> {
    if n + 1 > window {
        return Err(Error::Window(format!("K_{n} needs window at least {}, got {window}", n + 1)));
    }
    let diffs = (1..=n).map(|i| CofaceDifference::new(n, i)).collect::<Result<Vec<_>>>()?;
    (0..=window)
        .map(|d| {
            let mut acc = Subspace::full(binomial(d, n) as usize);
            for diff in &diffs {
                acc = acc.intersect(&diff.ideal_slice(d))?;
            }
            Ok(acc)
        })
        .collect()
}

/// `K_n` as a submodule of `P(n)`; `K_0 = P(0)`.
pub fn kn_by_intersection(n: usize, window: usize) -> Result<TruncatedModule> {
    let spaces = kn_spaces(n, window)?;
    let p = free_module(CatKind::Oi, n, window)?;
    if n == 0 {
        return Ok(p);
    }
    Ok(submodule(&p, spaces)?.0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KnCrossCheck {
    pub n: usize,
    pub window: usize,
    pub kn_dims: Vec<usize>,
    pub simple_dims: Vec<usize>,
    pub hom_dim: usize,
    pub isomorphic: bool,
}

/// Solves `Hom(K_n, ν⁻¹ S_n)` and tests its unique (up to scalar) element for invertibility.
pub fn kn_cross_check(n: usize, window: usize) -> Result<KnCrossCheck> {
    let k = kn_by_intersection(n, window)?;
    let s = simple_saturated_oi(n, window)?;
    let homs = hom_space(&k, &s)?;
    let isomorphic = homs.len() == 1 && homs[0].is_iso();
    Ok(KnCrossCheck {
        n,
        window,
        kn_dims: k.dims.clone(),
        simple_dims: s.dims.clone(),
        hom_dim: homs.len(),
        isomorphic,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerCheck {
    pub n: usize,
    pub quotient_dims: Vec<usize>,
    pub factors: Vec<SheafFactor>,
    /// Whether the factors of `P(n)/K_n` are exactly `{K_{n−1}}`.
    pub holds: bool,
}

/// Composition factors of `P(n)/K_n`, compared with the single factor `K_{n−1}`.
pub fn euler_check(n: usize, window: usize) -> Result<EulerCheck> {
    if n == 0 {
        return Err(Error::Invalid("P(0)/K_0 is zero".into()));
    }
    let p = free_module(CatKind::Oi, n, window)?;
    let (qmod, _) = quotient(&p, kn_spaces(n, window)?)?;
    let factors = composition_factors_sheaf(&qmod)?;
    let holds = factors == vec![SheafFactor { lambda: None, degree: n - 1, mult: 1 }];
    Ok(EulerCheck { n, quotient_dims: qmod.dims, factors, holds })
}
