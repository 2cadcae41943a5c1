use aritygap_core::{
    anf_identify, classify, from_anf, gap_report, identify, leq, substitute, to_anf, FiniteFunction, PackedTable,
    Substitution, VariableIndex, ZhegalkinPolynomial,
};
use proptest::prelude::*;

fn v(i: usize) -> VariableIndex {
    VariableIndex::new(i)
}

fn function(k: u32, b: u32, n: usize) -> impl Strategy<Value = FiniteFunction> {
    let rows = (k as usize).pow(n as u32);
    prop::collection::vec(0..b, rows).prop_map(move |t| FiniteFunction::new(k, b, n, t).unwrap())
}

fn any_small_function() -> impl Strategy<Value = FiniteFunction> {
    (2u32..=3, 2u32..=3, 1usize..=4).prop_flat_map(|(k, b, n)| function(k, b, n))
}

fn boolean(n: usize) -> impl Strategy<Value = FiniteFunction> {
    function(2, 2, n)
}

fn pair(n: usize) -> impl Strategy<Value = (usize, usize)> {
    (1..=n, 1..=n).prop_filter("distinct", |(i, j)| i != j)
}

fn substitution(source: usize, target: usize) -> impl Strategy<Value = Substitution> {
    prop::collection::vec(1..=target, source)
        .prop_map(move |m| Substitution::new(target, m.into_iter().map(VariableIndex::new).collect()).unwrap())
}

fn permuted(f: &FiniteFunction, perm: &[usize]) -> FiniteFunction {
    let s = Substitution::new(f.arity(), perm.iter().map(|&p| v(p + 1)).collect()).unwrap();
    substitute(f, &s).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn index_round_trip(f in any_small_function(), seed in any::<usize>()) {
        let idx = seed % f.table().len();
        let point = f.point_of(idx);
        prop_assert_eq!(f.index_of(&point).unwrap(), idx);
    }

    #[test]
    fn identified_variable_is_dummy(f in (2u32..=3, 2usize..=4).prop_flat_map(|(k, n)| function(k, k, n)),
                                    seed in any::<(usize, usize)>()) {
        let n = f.arity();
        let i = seed.0 % n + 1;
        let j = (i - 1 + 1 + seed.1 % (n - 1)) % n + 1;
        let m = identify(&f, v(i), v(j)).unwrap();
        prop_assert!(!m.is_essential(v(i)).unwrap());
        prop_assert!(m.ess() <= f.ess());
    }

    #[test]
    fn both_identification_directions_agree((f, (i, j)) in (2usize..=4).prop_flat_map(|n| (boolean(n), pair(n)))) {
        let a = identify(&f, v(i), v(j)).unwrap();
        let b = identify(&f, v(j), v(i)).unwrap();
        prop_assert_eq!(a.ess(), b.ess());
    }

    #[test]
    fn substitution_composition(
        (f, s, t) in (1usize..=3, 1usize..=3, 1usize..=3).prop_flat_map(|(a, b, c)| {
            (function(2, 3, a), substitution(a, b), substitution(b, c))
        })
    ) {
        let stepwise = substitute(&substitute(&f, &s).unwrap(), &t).unwrap();
        let composed = substitute(&f, &s.then(&t).unwrap()).unwrap();
        prop_assert_eq!(stepwise, composed);
    }

    #[test]
    fn minors_do_not_gain_variables(
        (f, s) in (1usize..=3, 1usize..=3).prop_flat_map(|(a, b)| (boolean(a), substitution(a, b)))
    ) {
        let g = substitute(&f, &s).unwrap();
        prop_assert!(leq(&g, &f).unwrap());
        prop_assert!(g.ess() <= f.ess());
        if g.ess() == f.ess() {
            prop_assert!(leq(&f, &g).unwrap());
        }
    }

    #[test]
    fn anf_round_trip(f in (1usize..=6).prop_flat_map(boolean)) {
        let p = to_anf(&f).unwrap();
        prop_assert_eq!(from_anf(&p).unwrap(), f.clone());
        for t in 1..=f.arity() {
            prop_assert_eq!(p.occurs(v(t)).unwrap(), f.is_essential(v(t)).unwrap());
        }
    }

    #[test]
    fn anf_identify_commutes((f, (i, j)) in (2usize..=5).prop_flat_map(|n| (boolean(n), pair(n)))) {
        let via_anf = anf_identify(&to_anf(&f).unwrap(), v(i), v(j)).unwrap();
        let via_table = to_anf(&identify(&f, v(i), v(j)).unwrap()).unwrap();
        prop_assert_eq!(via_anf, via_table);
    }

    #[test]
    fn classification_is_permutation_invariant(
        (f, perm) in (2usize..=5).prop_flat_map(|n| (boolean(n), Just((0..n).collect::<Vec<_>>()).prop_shuffle()))
    ) {
        prop_assume!(f.ess() >= 2);
        let g = permuted(&f, &perm);
        let a = classify(&to_anf(&f).unwrap()).unwrap();
        let b = classify(&to_anf(&g).unwrap()).unwrap();
        prop_assert_eq!(a.tag, b.tag);
        prop_assert_eq!(a.c, b.c);
        prop_assert_eq!(gap_report(&f).unwrap().gap, gap_report(&g).unwrap().gap);
    }

    #[test]
    fn packed_matches_generic(f in (5usize..=6).prop_flat_map(boolean)) {
        let p = PackedTable::from_function(&f).unwrap();
        prop_assert_eq!(p.ess(), f.ess());
        prop_assert_eq!(p.to_function(), f.clone());
        prop_assert_eq!(p.mobius().to_function(), {
            let anf = to_anf(&f).unwrap();
            let mut bits = vec![0u32; f.table().len()];
            for m in anf.monomials() {
                let row = (0..f.arity()).filter(|b| m.mask() & (1 << b) != 0)
                    .fold(0usize, |r, b| r | 1 << (f.arity() - 1 - b));
                bits[row] = 1;
            }
            FiniteFunction::new(2, 2, f.arity(), bits).unwrap()
        });
        if f.ess() >= 2 {
            prop_assert_eq!(p.gap_report().unwrap(), gap_report(&f).unwrap());
        }
    }

    #[test]
    fn special_shapes_have_gap_two(
        (shape, c, n, picks) in (0usize..3, 0u32..2, 3usize..=6, any::<[usize; 3]>())
    ) {
        let mut vars: Vec<usize> = (1..=n).collect();
        let mut chosen = Vec::new();
        for p in picks {
            chosen.push(vars.remove(p % vars.len()));
        }
        let (i, j, k) = (chosen[0], chosen[1], chosen[2]);
        let mut ms: Vec<Vec<usize>> = match shape {
            0 => vec![vec![i, j], vec![i]],
            1 => vec![vec![i, j], vec![i, k], vec![j, k]],
            _ => vec![vec![i, j], vec![i, k], vec![j, k], vec![i], vec![j]],
        };
        if c == 1 {
            ms.push(vec![]);
        }
        let p = ZhegalkinPolynomial::from_monomials(n, ms).unwrap();
        let f = from_anf(&p).unwrap();
        let r = gap_report(&f).unwrap();
        prop_assert_eq!(r.gap, 2);
        prop_assert!(classify(&p).unwrap().is_special());
    }
}
