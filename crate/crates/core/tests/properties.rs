use modrep_core::linalg::MatFp;
use modrep_core::partitions::{
    e_tilde, enumerate_p_regular, epsilon, f_tilde, is_js, mullineux, normal_nodes, phi, Partition,
};
use modrep_core::perm_groups::Permutation;
use modrep_core::reps::ModuleLibrary;
use proptest::prelude::*;

const PRIMES: [u32; 4] = [2, 3, 5, 7];

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = MatFp> {
    (prop::sample::select(PRIMES.to_vec()), 1..=max_rows, 1..=max_cols).prop_flat_map(|(p, r, c)| {
        prop::collection::vec(0..p, r * c).prop_map(move |data| MatFp::new(r, c, p, data).unwrap())
    })
}

fn partition(max_size: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1usize..=8, 0..=6).prop_filter_map("too large", move |mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        let l = Partition::new(v).unwrap();
        (l.size() <= max_size).then_some(l)
    })
}

fn regular_partition(max_size: usize) -> impl Strategy<Value = (Partition, u32)> {
    (partition(max_size), prop::sample::select(PRIMES.to_vec())).prop_filter("p-singular", |(l, p)| l.is_p_regular(*p))
}

fn permutation(max_degree: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_degree).prop_flat_map(|n| Just((0..n).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn same_degree_pair(max_degree: usize) -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
    (1..=max_degree).prop_flat_map(|n| {
        let one = || Just((0..n).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Permutation::from_images(v).unwrap());
        (one(), one(), one())
    })
}

proptest! {
    #[test]
    fn rref_is_idempotent(m in matrix(8, 8)) {
        let r = m.rref();
        prop_assert_eq!(&r.matrix.rref().matrix, &r.matrix);
        prop_assert_eq!(r.rank, r.pivots.len());
    }

    #[test]
    fn rank_of_transpose(m in matrix(9, 9)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn nullspace_is_annihilated(m in matrix(7, 9)) {
        let ns = m.nullspace();
        prop_assert_eq!(ns.dim() + m.rank(), m.ncols());
        prop_assert!(m.mul(&ns.basis().transpose()).is_zero());
    }

    #[test]
    fn inverse_when_full_rank(m in matrix(6, 6).prop_filter("square", |m| m.is_square())) {
        match m.inverse() {
            Some(inv) => prop_assert!(m.mul(&inv).is_identity()),
            None => prop_assert!(m.rank() < m.nrows()),
        }
    }

    #[test]
    fn conjugation_is_an_involution(l in partition(30)) {
        prop_assert_eq!(l.conjugate().conjugate(), l.clone());
        prop_assert_eq!(l.conjugate().size(), l.size());
    }

    #[test]
    fn partitions_round_trip_through_text(l in partition(30)) {
        prop_assert_eq!(l.to_string().parse::<Partition>().unwrap(), l);
    }

    #[test]
    fn mullineux_is_an_involution((l, p) in regular_partition(24)) {
        let m = mullineux(&l, p).unwrap();
        prop_assert!(m.is_p_regular(p));
        prop_assert_eq!(m.size(), l.size());
        prop_assert_eq!(mullineux(&m, p).unwrap(), l);
    }

    #[test]
    fn crystal_operators_are_inverse((l, p) in regular_partition(24), i in 0u32..7) {
        let i = i % p;
        if let Some(down) = e_tilde(&l, i, p) {
            prop_assert!(down.is_p_regular(p));
            prop_assert_eq!(f_tilde(&down, i, p), Some(l.clone()));
            prop_assert_eq!(epsilon(&down, i, p) + 1, epsilon(&l, i, p));
            prop_assert_eq!(phi(&down, i, p), phi(&l, i, p) + 1);
        } else {
            prop_assert_eq!(epsilon(&l, i, p), 0);
        }
        if let Some(up) = f_tilde(&l, i, p) {
            prop_assert!(up.is_p_regular(p));
            prop_assert_eq!(e_tilde(&up, i, p), Some(l.clone()));
        } else {
            prop_assert_eq!(phi(&l, i, p), 0);
        }
        prop_assert_eq!(normal_nodes(&l, i, p).len(), epsilon(&l, i, p));
    }

    #[test]
    fn js_means_one_normal_node((l, p) in regular_partition(24)) {
        let total: usize = (0..p).map(|i| epsilon(&l, i, p)).sum();
        prop_assert_eq!(is_js(&l, p), total == 1);
    }

    #[test]
    fn composition_is_associative((a, b, c) in same_degree_pair(9)) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        prop_assert_eq!(a.compose(&b).apply(0), a.apply(b.apply(0)));
        prop_assert_eq!(a.compose(&b).sign(), a.sign() * b.sign());
    }

    #[test]
    fn inverse_and_cycles(g in permutation(10)) {
        prop_assert!(g.compose(&g.inverse()).is_identity());
        let len: usize = g.cycles().iter().map(Vec::len).sum();
        prop_assert!(len <= g.degree());
        let mut power = Permutation::identity(g.degree());
        for _ in 0..g.order() {
            power = power.compose(&g);
        }
        prop_assert!(power.is_identity());
    }

    #[test]
    fn adjacent_words_reconstruct(g in permutation(8)) {
        let n = g.degree();
        let word = g.adjacent_word();
        prop_assert_eq!(word.len() % 2 == 0, g.is_even());
        let product = word
            .iter()
            .fold(Permutation::identity(n), |acc, &j| acc.compose(&Permutation::adjacent(n, j + 1)));
        prop_assert_eq!(product, g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn twisting_by_sign_preserves_dimension(n in 2usize..=7, pi in 0usize..3) {
        let p = PRIMES[pi];
        let lib = ModuleLibrary::new(None);
        for l in enumerate_p_regular(n, p) {
            let m = mullineux(&l, p).unwrap();
            prop_assert_eq!(lib.irreducible(&l, p).unwrap().dim(), lib.irreducible(&m, p).unwrap().dim());
        }
    }
}
