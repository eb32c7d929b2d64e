mod common;

use std::sync::Arc;

use proptest::prelude::*;

use common::{all_graphs, all_words, dec_all, enc_all, Oracle};
use pcg::pcgraph::{link, CommutationGraph, EdgeTag};
use pcg::words::{
    alphabet, block_decomposition, centralizer_alphabet, cyclic_reduce, disjointly_commutes, equal, invert,
    is_cyclically_reduced, is_irreducible, least_root, reduce, GroupWord, Letter,
};

fn graph_from_bits(n: usize, bits: u32) -> Arc<CommutationGraph> {
    let mut g = CommutationGraph::edgeless(n, "g");
    let mut k = 0;
    for a in 0..n {
        for b in a + 1..n {
            if bits >> k & 1 == 1 {
                g.add_edge(a, b, EdgeTag::D).unwrap();
            }
            k += 1;
        }
    }
    Arc::new(g)
}

fn word_in(n: usize) -> impl Strategy<Value = Vec<Letter>> {
    proptest::collection::vec((0..n, any::<bool>()).prop_map(|(gen, inv)| Letter { gen, inv }), 0..=12)
}

fn case() -> impl Strategy<Value = (Arc<CommutationGraph>, Vec<Letter>, Vec<Letter>)> {
    (2usize..=5, any::<u32>()).prop_flat_map(|(n, bits)| (Just(graph_from_bits(n, bits)), word_in(n), word_in(n)))
}

#[test]
fn centralizer_alphabet_is_link_of_alphabet() {
    let words = all_words(4, 5);
    for g in all_graphs(4) {
        let g = Arc::new(g);
        for w in &words {
            let w = GroupWord::new(g.clone(), dec_all(w)).unwrap();
            if !w.is_geodesic() || !is_cyclically_reduced(&w) {
                continue;
            }
            assert_eq!(centralizer_alphabet(&w), link(&g, &alphabet(&w), None).unwrap(), "{w} over {:?}", g.edges());
        }
    }
}

#[test]
fn canonical_forms_match_oracle_on_three_generators() {
    let words = all_words(3, 6);
    for g in all_graphs(3) {
        let o = Oracle::new(&g);
        let g = Arc::new(g);
        for w in &words {
            let gw = GroupWord::new(g.clone(), dec_all(w)).unwrap();
            assert_eq!(enc_all(gw.canonical()), o.canon(w), "{gw} over {:?}", g.edges());
            assert_eq!(gw.is_trivial(), o.trivial(w));
        }
    }
}

proptest! {
    #[test]
    fn reduce_laws((g, u, v) in case()) {
        let u = GroupWord::new(g.clone(), u).unwrap();
        let v = GroupWord::new(g.clone(), v).unwrap();
        let ru = reduce(&u);
        prop_assert_eq!(reduce(&ru).letters().to_vec(), ru.letters().to_vec());
        prop_assert!(equal(&ru, &u).unwrap());
        prop_assert!(reduce(&u.concat(&v).unwrap()).len() <= ru.len() + reduce(&v).len());
        let ri = reduce(&u.inverse());
        prop_assert_eq!(ri.len(), ru.len());
        prop_assert!(equal(&ri, &u.with_letters(invert(ru.letters()))).unwrap());
    }

    #[test]
    fn equal_is_an_equivalence((g, u, v) in case()) {
        let u = GroupWord::new(g.clone(), u).unwrap();
        let v = GroupWord::new(g.clone(), v).unwrap();
        prop_assert!(equal(&u, &u).unwrap());
        prop_assert_eq!(equal(&u, &v).unwrap(), equal(&v, &u).unwrap());
        let r = reduce(&v);
        if equal(&u, &v).unwrap() {
            prop_assert!(equal(&u, &r).unwrap());
        }
    }

    #[test]
    fn cyclic_reduction_conjugates_back((g, u, _v) in case()) {
        let u = GroupWord::new(g.clone(), u).unwrap();
        let (core, conj) = cyclic_reduce(&u);
        prop_assert!(is_cyclically_reduced(&core));
        let back = conj.concat(&core).unwrap().concat(&conj.inverse()).unwrap();
        prop_assert!(equal(&back, &u).unwrap());
    }

    #[test]
    fn blocks_multiply_back_and_commute((g, u, _v) in case()) {
        let u = GroupWord::new(g.clone(), u).unwrap();
        let bd = block_decomposition(&u);
        let mut prod = GroupWord::identity(g.clone());
        for b in &bd.blocks {
            prod = prod.concat(b).unwrap();
        }
        prop_assert!(equal(&prod, &u).unwrap());
        for (i, a) in bd.blocks.iter().enumerate() {
            for b in &bd.blocks[i + 1..] {
                prop_assert!(disjointly_commutes(a, b).unwrap());
            }
        }
    }

    #[test]
    fn root_of_a_root_is_primitive((g, u, _v) in case(), k in 1usize..=3) {
        let u = GroupWord::new(g.clone(), u).unwrap();
        prop_assume!(!u.is_trivial());
        let (root, m) = least_root(&u).unwrap();
        prop_assert!(equal(&root.pow(m), &u).unwrap());
        prop_assert_eq!(least_root(&root).unwrap().1, 1);
        let (_, mk) = least_root(&u.pow(k)).unwrap();
        prop_assert_eq!(mk, m * k);
    }

    #[test]
    fn irreducibility_is_conjugation_invariant((g, u, c) in case()) {
        let u = GroupWord::new(g.clone(), u).unwrap();
        prop_assume!(!u.is_trivial());
        let c = GroupWord::new(g.clone(), c.into_iter().take(4).collect()).unwrap();
        let conj = c.concat(&u).unwrap().concat(&c.inverse()).unwrap();
        prop_assert_eq!(is_irreducible(&conj).unwrap(), is_irreducible(&u).unwrap());
    }
}
