use klqds::family::{gap_report, gen_lk_nfa, gen_sk_qds, in_lk, FamilyInstance};
use klqds::reduce::{equiv_fixpoint, quotient};
use klqds::trim::trim_qds;
use klqds::words::words_up_to;

#[test]
fn sizes() {
    for k in 0..=8 {
        let inst = FamilyInstance::new(k);
        assert_eq!(inst.nfa.num_states(), k + 2);
        assert_eq!(inst.dfa.num_states(), 1 << (k + 1), "k = {k}");
        assert_eq!(inst.sk.len(), 2 * (k + 1) * (k + 1) + k + 3, "k = {k}");
        assert_eq!(inst.sk.num_layers(), k + 3);
    }
    assert_eq!(gen_sk_qds(3).len(), 38);
}

#[test]
fn s0_shape() {
    let s = gen_sk_qds(0);
    let text = klqds::format::write_qds(&s);
    let expected = "\
@type qds
@alphabet a b
@layers 3
@layer 1 (1,1)
@layer 2 (1,2) (1,2)'
@layer 3 (1,3) (2,3)
@initial (1,1)
@final (1,2) (1,3)
(1,1) a (1,2)
(1,1) b (1,2)'
(1,2) a (1,3)
(1,2) b (2,3)
(1,2)' a (1,3)
(1,2)' b (2,3)
@gamma (1,3) (1,1) 1
@gamma (2,3) (1,1) 2
";
    assert_eq!(text, expected);
}

#[test]
fn languages_agree() {
    for k in 0..=5 {
        let inst = FamilyInstance::new(k);
        let trimmed = trim_qds(&inst.sk);
        let reduced = quotient(&trimmed, &equiv_fixpoint(&trimmed)).unwrap();
        for w in words_up_to(2, 2 * k + 4) {
            let expected = in_lk(k, &w);
            assert_eq!(inst.nfa.accepts(&w).unwrap(), expected);
            assert_eq!(inst.dfa.accepts(&w).unwrap(), expected);
            assert_eq!(inst.sk.accepts(&w).unwrap(), expected, "k={k} w={w:?}");
            assert_eq!(trimmed.accepts(&w).unwrap(), expected);
            assert_eq!(reduced.accepts(&w).unwrap(), expected);
        }
    }
}

#[test]
fn lk_nfa_small() {
    let a = gen_lk_nfa(0);
    assert_eq!(a.num_states(), 2);
    let w = a.alphabet().parse_word("bba").unwrap();
    assert!(a.accepts(&w).unwrap());
    let a2 = gen_lk_nfa(2);
    assert!(a2.accepts(&a2.alphabet().parse_word("baaba").unwrap()).unwrap());
    assert!(!a2.accepts(&a2.alphabet().parse_word("bbbaa").unwrap()).unwrap());
}

#[test]
fn report_rows() {
    let r = gap_report(4, 1).unwrap();
    assert_eq!(r.rows.len(), 5);
    let row0 = &r.rows[0];
    assert_eq!((row0.nfa_states, row0.sk_states, row0.dfa_states), (2, 5, 2));
    assert_eq!((r.rows[4].sk_states, r.rows[4].dfa_states), (57, 32));
    for row in &r.rows {
        assert!(row.sk_after_reduce <= row.sk_after_trim && row.sk_after_trim <= row.sk_states);
        assert!(row.membership_reads_per_symbol > 0.0);
    }
    assert_eq!(r, gap_report(4, 1).unwrap());
    assert!(r.to_csv().starts_with("k,nfa_states,sk_states,dfa_states,"));
}
