use kh_core::{betti_table, certify, BraidWord, KhComplex, Verdict};

fn all_words(n: usize, max_len: usize) -> Vec<BraidWord> {
    let letters: Vec<i32> = (1..n as i32).flat_map(|k| [k, -k]).collect();
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &l in &letters {
                let mut v: Vec<i32> = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.into_iter().map(|l| BraidWord::new(n, l).unwrap()).collect()
}

#[test]
fn two_strand_verdicts_follow_exponent_sum() {
    let words = all_words(2, 4);
    assert_eq!(words.len(), 31);
    for w in words {
        let r = certify(&w, 16).unwrap();
        assert_eq!(
            r.verdict == Verdict::ConsistentWithTrivial,
            w.exponent_sum() == 0,
            "{w}"
        );
    }
}

#[test]
fn three_strand_verdicts_follow_reduction_oracle() {
    let words = all_words(3, 3);
    assert_eq!(words.len(), 1 + 4 + 16 + 64);
    for w in words {
        let r = certify(&w, 16).unwrap();
        if !w.closure_permutation().is_identity() {
            assert_eq!(r.verdict, Verdict::NotNComponent, "{w}");
        } else if w.free_reduction().is_empty() {
            assert_eq!(r.verdict, Verdict::ConsistentWithTrivial, "{w}");
        } else {
            assert_eq!(r.verdict, Verdict::ModuleObstructed, "{w}");
        }
    }
}

#[test]
fn two_strand_torus_tables_have_expected_size() {
    // Rationally Kh(T(2,k)) has dimension k + 1 (k odd) or k + 2 (k even), plus
    // one 2-torsion summand per pair of adjacent homological degrees; over
    // GF(2) each torsion summand contributes two, giving 2k in both cases.
    for k in 1..=9usize {
        let w = BraidWord::new(2, vec![1; k]).unwrap();
        let t = betti_table(&KhComplex::from_word(&w, 16).unwrap()).unwrap();
        assert_eq!(t.total_dim(), 2 * k, "k = {k}");
    }
}
