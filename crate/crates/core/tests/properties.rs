use proptest::prelude::*;

use fisheaf::artin::invariants_f;
use fisheaf::combinat::{
    add_boxes_distinct_columns, binomial, hook_dimension, pad_uniform, remove_one_box, Partition,
};
use fisheaf::linalgq::{kernel, q, rref, RationalMatrix, Subspace, Q};
use fisheaf::modcore::{
    decompose_degree, direct_sum, free_module, hom_space, induced_projective, shift, simple_at, ModuleMorphism,
    TruncatedModule,
};
use fisheaf::oimod::kn_by_intersection;
use fisheaf::skelcat::{canonical_factorization, hom_index, hom_set, recompose, CatKind, Injection};
use fisheaf::symrep::{decompose_by_character, irrep_matrices};
use fisheaf::torsion::{is_separated, torsion_submodule};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

fn partition(max_parts: usize, max_part: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1..=max_part, 0..=max_parts).prop_map(|mut p| {
        p.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(p).unwrap()
    })
}

fn int_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=5).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
}

fn to_matrix(rows: &[Vec<i64>]) -> RationalMatrix {
    let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    RationalMatrix::from_i64(&refs)
}

/// Fraction-free (Bareiss) elimination over the integers.
fn bareiss_rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let (m, n) = (a.len(), a[0].len());
    let (mut rank, mut prev) = (0usize, 1i128);
    for col in 0..n {
        let Some(p) = (rank..m).find(|&r| a[r][col] != 0) else { continue };
        a.swap(rank, p);
        for r in rank + 1..m {
            for c in col + 1..n {
                a[r][c] = (a[rank][col] * a[r][c] - a[r][col] * a[rank][c]) / prev;
            }
            a[r][col] = 0;
        }
        prev = a[rank][col];
        rank += 1;
        if rank == m {
            break;
        }
    }
    rank
}

fn small_fi_modules() -> Vec<TruncatedModule> {
    let part = |s: &str| s.parse::<Partition>().unwrap();
    vec![
        free_module(CatKind::Fi, 0, 4).unwrap(),
        free_module(CatKind::Fi, 1, 4).unwrap(),
        simple_at(&part("1"), 4).unwrap(),
        simple_at(&part("1,1"), 4).unwrap(),
        induced_projective(&part("2"), 4).unwrap(),
    ]
}

fn random_morphism(v: &TruncatedModule, w: &TruncatedModule, coeffs: &[i64]) -> ModuleMorphism {
    let basis = hom_space(v, w).unwrap();
    let mut f = ModuleMorphism::zero(v, w).unwrap();
    for (b, c) in basis.iter().zip(coeffs.iter().cycle()) {
        let comps = f.comps.iter().zip(&b.comps).map(|(x, y)| x.add(&y.scale(&q(*c)))).collect();
        f = ModuleMorphism::new(v.clone(), w.clone(), comps).unwrap();
    }
    f
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn pieri_dimension_identity(lambda in partition(4, 4), k in 0usize..=5) {
        let m = lambda.size();
        let total: u128 = add_boxes_distinct_columns(&lambda, k).iter().map(hook_dimension).sum();
        prop_assert_eq!(total, binomial(m + k, k) * hook_dimension(&lambda));
    }

    #[test]
    fn branching_dimension_identity(lambda in partition(5, 5)) {
        prop_assume!(!lambda.is_empty());
        let total: u128 = remove_one_box(&lambda).unwrap().iter().map(hook_dimension).sum();
        prop_assert_eq!(total, hook_dimension(&lambda));
    }

    #[test]
    fn uniform_padding_presence(lambda in partition(4, 4), n in 0usize..=14) {
        match pad_uniform(&lambda, n) {
            Some(mu) => {
                prop_assert_eq!(mu.size(), n);
                prop_assert!(n >= lambda.size() + lambda.first());
            }
            None => prop_assert!(n < lambda.size() + lambda.first()),
        }
    }

    #[test]
    fn rref_is_idempotent_and_rank_matches_bareiss(rows in int_matrix()) {
        let m = to_matrix(&rows);
        let (r, pivots) = rref(&m);
        let (r2, pivots2) = rref(&r);
        prop_assert_eq!(&r, &r2);
        prop_assert_eq!(&pivots, &pivots2);
        let rank = bareiss_rank(&rows);
        prop_assert_eq!(m.rank(), rank);
        prop_assert_eq!(kernel(&m).dim() + rank, m.cols());
    }

    #[test]
    fn intersection_is_commutative_and_associative(a in int_matrix(), b in int_matrix(), c in int_matrix()) {
        let width = 5;
        let span = |rows: &[Vec<i64>]| {
            let vecs: Vec<Vec<Q>> = rows
                .iter()
                .map(|r| (0..width).map(|i| q(r.get(i).copied().unwrap_or(0))).collect())
                .collect();
            Subspace::from_vectors(width, &vecs)
        };
        let (a, b, c) = (span(&a), span(&b), span(&c));
        prop_assert_eq!(a.intersect(&b).unwrap(), b.intersect(&a).unwrap());
        let left = a.intersect(&b).unwrap().intersect(&c).unwrap();
        let right = a.intersect(&b.intersect(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn factorizations_recompose(oi in any::<bool>(), n in 0usize..=6, seed in any::<u64>()) {
        let kind = if oi { CatKind::Oi } else { CatKind::Fi };
        let m = (seed as usize) % (n + 1);
        let homs = hom_set(kind, m, n);
        let f = &homs[(seed as usize / 7) % homs.len()];
        prop_assert_eq!(&recompose(&canonical_factorization(kind, f).unwrap()), f);
    }

    #[test]
    fn hom_index_is_the_enumeration_position(oi in any::<bool>(), n in 0usize..=5, m_seed in any::<usize>()) {
        let kind = if oi { CatKind::Oi } else { CatKind::Fi };
        let m = m_seed % (n + 1);
        for (k, f) in hom_set(kind, m, n).iter().enumerate() {
            prop_assert_eq!(hom_index(kind, f), k);
        }
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn single_entry_mutation_breaks_validation(which in 0usize..4, pick in any::<usize>(), delta in 1i64..=3) {
        // Permutation modules: a positive bump leaves a nonnegative integer matrix that is
        // not a permutation matrix, so it cannot square to the identity.
        let mut v = [
            free_module(CatKind::Fi, 1, 4).unwrap(),
            free_module(CatKind::Fi, 2, 4).unwrap(),
            free_module(CatKind::Fi, 3, 4).unwrap(),
            induced_projective(&"2".parse::<Partition>().unwrap(), 4).unwrap(),
        ][which]
            .clone();
        let slots: Vec<(usize, usize)> = v
            .fi_gens
            .iter()
            .enumerate()
            .flat_map(|(n, g)| (0..g.len()).map(move |i| (n, i)))
            .filter(|&(n, i)| v.fi_gens[n][i].rows() > 0)
            .collect();
        prop_assume!(!slots.is_empty());
        let (n, i) = slots[pick % slots.len()];
        let mat = &mut v.fi_gens[n][i];
        let (r, c) = ((pick / 3) % mat.rows(), (pick / 11) % mat.cols());
        let x = mat.get(r, c) + q(delta);
        mat.set(r, c, x);
        prop_assert!(!v.validate().passed);
    }

    #[test]
    fn kernel_and_image_ranks_add_up(src in 0usize..5, dst in 0usize..5, coeffs in prop::collection::vec(-2i64..=2, 1..4)) {
        let mods = small_fi_modules();
        let f = random_morphism(&mods[src], &mods[dst], &coeffs);
        let (k, inc) = f.kernel().unwrap();
        let (_, proj) = f.cokernel().unwrap();
        prop_assert!(f.compose(&inc).unwrap().is_zero());
        prop_assert!(proj.compose(&f).unwrap().is_zero());
        for (n, rank) in f.ranks().into_iter().enumerate() {
            prop_assert_eq!(k.dims[n] + rank, mods[src].dims[n]);
        }
    }

    #[test]
    fn shift_is_exact_on_kernels(src in 0usize..5, dst in 0usize..5, coeffs in prop::collection::vec(-2i64..=2, 1..4)) {
        let mods = small_fi_modules();
        let f = random_morphism(&mods[src], &mods[dst], &coeffs);
        let shifted_kernel = shift(&f.kernel().unwrap().0).unwrap();
        // Degree n of Σφ is φ_{n+1}.
        let (sv, sw) = (shift(&mods[src]).unwrap(), shift(&mods[dst]).unwrap());
        let sf = ModuleMorphism::new(sv, sw, f.comps[1..].to_vec()).unwrap();
        prop_assert!(sf.validate().is_ok());
        prop_assert_eq!(shifted_kernel.dims, sf.kernel().unwrap().0.dims);
    }

    #[test]
    fn decomposition_multiplicities_account_for_dimensions(which in 0usize..5, n in 0usize..=4) {
        let v = small_fi_modules().swap_remove(which);
        let dec = decompose_degree(&v, n).unwrap();
        let total: u128 = dec.iter().map(|(lambda, &m)| hook_dimension(lambda) * m as u128).sum();
        prop_assert_eq!(total as usize, v.dims[n]);
    }

    #[test]
    fn json_round_trip_is_byte_identical(a in 0usize..5, b in 0usize..5) {
        let mods = small_fi_modules();
        let v = direct_sum(&[&mods[a], &mods[b]]).unwrap();
        let s = v.to_json();
        let back = TruncatedModule::from_json(&s).unwrap();
        prop_assert_eq!(&back, &v);
        prop_assert_eq!(back.to_json(), s);
    }

    #[test]
    fn torsion_is_idempotent_and_quotient_separated(a in 0usize..5, b in 0usize..5) {
        let mods = small_fi_modules();
        let v = direct_sum(&[&mods[a], &mods[b]]).unwrap();
        let t = torsion_submodule(&v).unwrap();
        let tt = torsion_submodule(&t.torsion_part).unwrap();
        prop_assert_eq!(&tt.torsion_part.dims, &t.torsion_part.dims);
        prop_assert!(is_separated(&t.free_part));
    }

    #[test]
    fn torsion_is_stable_under_window_growth(m in 0usize..=2, shape in prop::sample::select(vec!["0", "1", "2", "1,1"])) {
        let lambda: Partition = shape.parse().unwrap();
        let build = |n: usize| direct_sum(&[&free_module(CatKind::Fi, m, n).unwrap(), &simple_at(&lambda, n).unwrap()]).unwrap();
        let (small, large) = (build(5), build(6));
        let (ts, tl) = (torsion_submodule(&small).unwrap(), torsion_submodule(&large).unwrap());
        let reliable = ts.reliable_up_to;
        prop_assert_eq!(&ts.torsion_part.dims[..=reliable], &tl.torsion_part.dims[..=reliable]);
    }

    #[test]
    fn invariants_stabilize(n in 0usize..=2, i in 0usize..=3) {
        let start = i.max(n) + 1;
        let base = invariants_f(n, i, start).unwrap().dim();
        for horizon in start + 1..=start + 2 {
            prop_assert_eq!(invariants_f(n, i, horizon).unwrap().dim(), base);
        }
    }
}

#[test]
fn irreducibles_decompose_to_themselves() {
    for n in 1..=5 {
        for lambda in fisheaf::combinat::partitions_of(n) {
            let rep = irrep_matrices(&lambda);
            let dec = decompose_by_character(rep.dim(), &rep.generators, n).unwrap();
            assert_eq!(dec.into_iter().collect::<Vec<_>>(), vec![(lambda, 1)]);
        }
    }
}

#[test]
fn kn_agrees_across_windows() {
    for n in 0..=2 {
        let a = kn_by_intersection(n, 5).unwrap();
        let b = kn_by_intersection(n, 6).unwrap();
        assert_eq!(a.dims[..], b.dims[..=5]);
    }
}

#[test]
fn cli_output_is_byte_stable() {
    let args: &[&[&str]] = &[
        &["fisheaf", "simple", "--cat", "fi", "--lambda", "1", "--window", "5"],
        &["fisheaf", "kn", "--n", "1", "--window", "5"],
        &["fisheaf", "ore", "--cat", "oi", "--bound", "3"],
        &["fisheaf", "artin", "invariants", "--n", "1", "--i", "2", "--horizon", "5"],
    ];
    for a in args {
        let run = || {
            let (mut out, mut err) = (Vec::new(), Vec::new());
            let code = fisheaf::cli::run_with(a.iter().copied(), &mut out, &mut err);
            (code, out, err)
        };
        let first = run();
        assert_eq!(first.0, 0, "{a:?}: {}", String::from_utf8_lossy(&first.2));
        assert_eq!(first, run());
    }
}

#[test]
fn injections_compose_with_identities() {
    for n in 0..=4 {
        for m in 0..=n {
            for f in hom_set(CatKind::Fi, m, n) {
                let left = fisheaf::skelcat::compose(&Injection::identity(n), &f).unwrap();
                let right = fisheaf::skelcat::compose(&f, &Injection::identity(m)).unwrap();
                assert_eq!(left, f);
                assert_eq!(right, f);
            }
        }
    }
}
