//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p klqds-cli --test acceptance`. Every check is exact
//! unless a budget below says otherwise.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use klqds::analysis::{
    default_k_max, exists_kl, find_minimal_kl, is_k_lookahead_deterministic, is_kl_unambiguous, MinimalKl,
};
use klqds::family::{in_lk, FamilyInstance};
use klqds::nfa::{random_dfa, random_nfa};
use klqds::qds::{build_qds, build_qds_size, dfa_to_qds, prune_unreachable, random_qds};
use klqds::reduce::{equiv_chain, equiv_fixpoint, quotient, verify_right_invariant, LayeredPartition};
use klqds::trim::{compute_useful, trim_qds};
use klqds::words::{words_of_len, words_up_to};
use klqds::{samples, Nfa, Qds, QdsEdge, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Wall-clock budgets; exceeding one fails the criterion.
const GAP_BUDGET: Duration = Duration::from_secs(60);
const ORACLE_BUDGET: Duration = Duration::from_secs(300);

const GAP_K_MAX: usize = 8;
const GAP_RANDOM_WORDS: usize = 1000;
const GAP_RANDOM_MAX_LEN: usize = 200;
const LOOKAHEAD_K_MAX: usize = 8;
const TRIM_WORD_LEN: usize = 10;
const REDUCE_INSTANCES: usize = 200;
const REDUCE_WORD_LEN: usize = 10;
const ORACLE_INSTANCES: u64 = 500;
const ORACLE_MAX_STATES: usize = 5;
const ORACLE_MAX_SIGMA: usize = 2;
const EMBED_INSTANCES: u64 = 100;
const EMBED_WORD_LEN: usize = 8;
const SEED: u64 = 0x6b6c_7164;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cli(args: &[&str]) -> (i32, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_klqds"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        o.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&o.stdout).trim().to_string(),
    )
}

fn data(name: &str) -> String {
    format!("{}/../core/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn random_word(rng: &mut ChaCha8Rng, sigma: usize, max_len: usize) -> Word {
    (0..rng.gen_range(0..=max_len))
        .map(|_| rng.gen_range(0..sigma))
        .collect()
}

fn same_language(s: &Qds, t: &Qds, max_len: usize) -> Result<(), String> {
    for w in words_up_to(s.alphabet().len(), max_len) {
        if s.accepts(&w).unwrap() != t.accepts(&w).unwrap() {
            return Err(format!("languages differ on {:?}", s.alphabet().format_word(&w)));
        }
    }
    Ok(())
}

/// A seeded random (k,l)-unambiguous NFA and its minimal pair.
fn unambiguous_nfa(rng: &mut ChaCha8Rng) -> Option<(Nfa, usize, usize)> {
    let n = rng.gen_range(1..=ORACLE_MAX_STATES);
    let sigma = rng.gen_range(1..=ORACLE_MAX_SIGMA);
    let a = random_nfa(rng.gen(), n, sigma, rng.gen_range(0.1..0.45), 0.4);
    match find_minimal_kl(&a, 4).unwrap() {
        MinimalKl::Found { k, l } => Some((a, k, l)),
        _ => None,
    }
}

/// Fixtures, structures built from unambiguous NFAs, DFA embeddings, small
/// S_k and random layered structures.
fn corpus() -> Vec<Qds> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut out = samples::all_qds();
    let mut built = 0;
    while built < 40 {
        if let Some((a, k, l)) = unambiguous_nfa(&mut rng) {
            let s = build_qds(&a, k, l).unwrap();
            out.push(prune_unreachable(&s));
            out.push(s);
            built += 1;
        }
    }
    for _ in 0..30 {
        let d = random_dfa(rng.gen(), rng.gen_range(1..=5), rng.gen_range(1..=3), 0.8, 0.4);
        out.push(dfa_to_qds(d.as_nfa()).unwrap());
    }
    for k in 0..=3 {
        out.push(FamilyInstance::new(k).sk);
    }
    for _ in 0..40 {
        let (m, sigma) = (rng.gen_range(2..=4), rng.gen_range(1..=3));
        out.push(random_qds(rng.gen(), m, 3, sigma, rng.gen_range(0.4..1.0), 0.35, 0.15));
    }
    out
}

fn gap() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for k in 0..=GAP_K_MAX {
        let inst = FamilyInstance::new(k);
        ensure(inst.dfa.num_states() == 1 << (k + 1), || {
            format!("k={k}: minimal DFA has {} states", inst.dfa.num_states())
        })?;
        let expected = 2 * (k + 1) * (k + 1) + k + 3;
        ensure(inst.sk.len() == expected, || {
            format!("k={k}: S_k has {} states, expected {expected}", inst.sk.len())
        })?;
        let check = |w: &[usize]| -> Result<(), String> {
            let want = in_lk(k, w);
            let got = [
                inst.nfa.accepts(w).unwrap(),
                inst.dfa.accepts(w).unwrap(),
                inst.sk.accepts(w).unwrap(),
            ];
            ensure(got.iter().all(|&g| g == want), || {
                format!("k={k}: disagreement on {w:?}: {got:?} vs {want}")
            })
        };
        for w in words_up_to(2, 2 * k + 4) {
            check(&w)?;
        }
        for _ in 0..GAP_RANDOM_WORDS {
            check(&random_word(&mut rng, 2, GAP_RANDOM_MAX_LEN))?;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed <= GAP_BUDGET, || {
        format!("took {elapsed:.1?}, budget {GAP_BUDGET:?}")
    })?;
    Ok(format!(
        "k=0..{GAP_K_MAX}: dfa=2^(k+1), |S_k|=2(k+1)^2+k+3, languages agree"
    ))
}

fn worked_example() -> Check {
    let nfa = data("nine_state.nfa");
    for (k, l, want) in [(3, 3, 1), (4, 2, 1), (4, 3, 0), (4, 4, 0)] {
        let (code, out) = cli(&["check", "--k", &k.to_string(), "--l", &l.to_string(), &nfa]);
        ensure(code == want, || format!("check ({k},{l}) exited {code}: {out}"))?;
    }
    for k in 1..=LOOKAHEAD_K_MAX {
        let (code, out) = cli(&["lookahead", "--k", &k.to_string(), &nfa]);
        ensure(code == 1, || format!("lookahead k={k} exited {code}: {out}"))?;
    }
    let (code, out) = cli(&["exists", &nfa]);
    ensure(code == 0, || format!("exists exited {code}: {out}"))?;
    Ok(format!(
        "(3,3),(4,2) false; (4,3),(4,4) true; lookahead false for k<=8; {out}"
    ))
}

fn construction() -> Check {
    let a = samples::nfa(samples::SIGMA_A_SIGMA_NFA);
    let s = build_qds(&a, 3, 3).map_err(|e| e.to_string())?;
    ensure(s.len() == 45 && build_qds_size(3, 2, 3) == 45, || {
        format!("unpruned size {}", s.len())
    })?;
    let p = prune_unreachable(&s);
    ensure(p.len() == 15, || format!("pruned size {}", p.len()))?;
    let shifts: Vec<usize> = words_of_len(2, 3)
        .map(|w| {
            let name = format!("1|{}", a.alphabet().format_word(&w));
            p.gamma(p.state_id(&name).unwrap()).unwrap().shift
        })
        .collect();
    ensure(shifts == [1, 1, 2, 3, 1, 1, 2, 3], || format!("shifts {shifts:?}"))?;
    for w in words_up_to(2, 8) {
        let want = a.accepts(&w).unwrap();
        ensure(s.accepts(&w).unwrap() == want && p.accepts(&w).unwrap() == want, || {
            format!("membership differs on {w:?}")
        })?;
    }
    Ok("45 states before pruning, 15 after, shifts (1,1,2,3,1,1,2,3), words <= 8 agree".into())
}

fn membership() -> Check {
    let (code, out) = cli(&["member", "--word", "bbbaabab", &data("window3.qds")]);
    ensure(code == 0 && out.starts_with("ACCEPT state=7 shifts=4 "), || {
        format!("exit {code}: {out}")
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut runs = 0;
    for s in corpus() {
        let (m1, sigma) = (s.window(), s.alphabet().len());
        let shift = s.stats().min_shift.unwrap_or(1);
        let words: Vec<Word> = words_up_to(sigma, if sigma == 3 { 7 } else { 10 })
            .chain((0..200).map(|_| random_word(&mut rng, sigma, 60)))
            .collect();
        for w in words {
            let r = s.run(&w).unwrap();
            let bound = m1 * w.len().div_ceil(shift) + m1;
            ensure(r.reads <= bound, || {
                format!("{} reads > bound {bound} for |w|={}", r.reads, w.len())
            })?;
            runs += 1;
        }
    }
    Ok(format!("{out}; read bound holds on {runs} runs"))
}

fn trimming() -> Check {
    let s = samples::qds(samples::TO_TRIM_QDS);
    let r = compute_useful(&s);
    let id = |n: &str| s.state_id(n).unwrap();
    ensure(!r.transitions.contains(&QdsEdge::symbol(id("2"), 2, id("3"))), || {
        "edge (2,c,3) kept".into()
    })?;
    ensure(!r.finalities.contains(&id("5")), || "finality of 5 kept".into())?;
    let t = trim_qds(&s);
    ensure(t == samples::qds(samples::TRIMMED_QDS), || {
        format!("trimmed structure differs:\n{t}")
    })?;
    ensure(t.len() == 6, || format!("{} states", t.len()))?;
    let u = trim_qds(&samples::qds(samples::UNTRIMMED_QDS));
    let edges: Vec<String> = u.edges().map(|e| u.format_edge(&e)).collect();
    ensure(u.names() == ["1", "2"] && edges == ["(1,a,2)"], || {
        format!("got {:?} {edges:?}", u.names())
    })?;
    let corpus = corpus();
    for c in &corpus {
        let t = trim_qds(c);
        same_language(c, &t, TRIM_WORD_LEN)?;
        ensure(trim_qds(&t) == t, || "trimming is not idempotent".into())?;
    }
    Ok(format!(
        "reference structures reproduced; {} structures preserved and idempotent",
        corpus.len()
    ))
}

fn reduction() -> Check {
    let s = samples::qds(samples::SHIFT12_QDS);
    let eq = equiv_fixpoint(&s);
    ensure(eq.classes() == LayeredPartition::identity(&s).classes(), || {
        "S is not irreducible".into()
    })?;
    let s2 = samples::qds(samples::SHIFT22_QDS);
    let eq2 = equiv_fixpoint(&s2);
    let classes: Vec<Vec<&str>> = eq2
        .classes()
        .iter()
        .map(|c| c.iter().map(|&q| s2.name(q)).collect())
        .collect();
    ensure(classes == [vec!["1"], vec!["2", "4"], vec!["3", "5"]], || {
        format!("classes {classes:?}")
    })?;
    let red = quotient(&s2, &eq2).map_err(|e| e.to_string())?;
    ensure(red == samples::qds(samples::SHIFT22_REDUCED_QDS), || {
        format!("quotient differs:\n{red}")
    })?;

    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    let (mut done, mut merged) = (0, 0);
    while done < REDUCE_INSTANCES {
        let Some((a, k, l)) = unambiguous_nfa(&mut rng) else {
            continue;
        };
        let full = build_qds(&a, k, l).unwrap();
        let s = if done % 2 == 0 { full } else { prune_unreachable(&full) };
        let chain = equiv_chain(&s);
        ensure(chain.windows(2).all(|p| p[1].refines(&p[0])), || {
            "chain not monotone".into()
        })?;
        let smallest = (1..=s.num_layers()).map(|j| s.layer(j).len()).min().unwrap();
        let fix = equiv_fixpoint(&s);
        ensure(fix.steps() <= smallest, || {
            format!("{} steps > s = {smallest}", fix.steps())
        })?;
        ensure(verify_right_invariant(&s, &fix).unwrap().is_none(), || {
            "not right invariant".into()
        })?;
        let q = quotient(&s, &fix).map_err(|e| e.to_string())?;
        same_language(&s, &q, REDUCE_WORD_LEN)?;
        merged += s.len() - q.len();
        done += 1;
    }
    Ok(format!(
        "reference structures reproduced; {REDUCE_INSTANCES} random structures ok, {merged} states merged"
    ))
}

/// Bitmask oracle for (k,k)-unambiguity. Prefixes with at most one forward
/// state are settled; every other word of length k is checked position by
/// position against its exact backward sets.
struct Oracle {
    n: usize,
    sigma: usize,
    succ: Vec<Vec<u32>>,
}

impl Oracle {
    fn new(a: &Nfa) -> Self {
        let succ = (0..a.num_states())
            .map(|p| {
                (0..a.alphabet().len())
                    .map(|x| a.successors(p, x).iter().fold(0u32, |m, q| m | 1 << q))
                    .collect()
            })
            .collect();
        Oracle {
            n: a.num_states(),
            sigma: a.alphabet().len(),
            succ,
        }
    }

    fn post(&self, set: u32, x: usize) -> u32 {
        (0..self.n)
            .filter(|&p| set >> p & 1 == 1)
            .fold(0, |m, p| m | self.succ[p][x])
    }

    fn holds(&self, k: usize) -> bool {
        let mut word = Vec::with_capacity(k);
        let mut fwd = Vec::with_capacity(k + 1);
        (0..self.n).all(|q| {
            fwd.clear();
            fwd.push(1u32 << q);
            self.extend(k, &mut word, &mut fwd)
        })
    }

    fn extend(&self, k: usize, word: &mut Vec<usize>, fwd: &mut Vec<u32>) -> bool {
        let i = word.len();
        if i >= 1 && fwd[i].count_ones() <= 1 {
            return true;
        }
        if i == k {
            return self.leaf_ok(word, fwd);
        }
        (0..self.sigma).all(|x| {
            let next = self.post(fwd[i], x);
            word.push(x);
            fwd.push(next);
            let ok = self.extend(k, word, fwd);
            word.pop();
            fwd.pop();
            ok
        })
    }

    fn leaf_ok(&self, word: &[usize], fwd: &[u32]) -> bool {
        let k = word.len();
        let mut back = (1u32 << self.n) - 1;
        let mut ok = (fwd[k] & back).count_ones() <= 1;
        for i in (1..k).rev() {
            back = (0..self.n)
                .filter(|&p| self.succ[p][word[i]] & back != 0)
                .fold(0, |m, p| m | 1 << p);
            ok |= (fwd[i] & back).count_ones() <= 1;
        }
        ok
    }
}

fn oracle() -> Check {
    let start = Instant::now();
    let known = Oracle::new(&samples::nfa(samples::NINE_STATE_NFA));
    ensure(!known.holds(3) && known.holds(4), || {
        "oracle misjudges the nine-state automaton".into()
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let (mut positive, mut built) = (0, 0);
    for _ in 0..ORACLE_INSTANCES {
        let n = rng.gen_range(1..=ORACLE_MAX_STATES);
        let sigma = rng.gen_range(1..=ORACLE_MAX_SIGMA);
        let a = random_nfa(rng.gen(), n, sigma, rng.gen_range(0.1..0.5), 0.5);
        let report = exists_kl(&a).unwrap();
        let o = Oracle::new(&a);
        let bound = default_k_max(&a);
        // (k,k) is monotone in k, so checking the bound decides the search.
        let brute = o.holds(bound);
        ensure(report.exists == brute, || {
            format!("seeded NFA with {n} states: exists={}, brute={brute}", report.exists)
        })?;
        for k in 1..=4 {
            let la = is_k_lookahead_deterministic(&a, k).unwrap();
            ensure(la == is_kl_unambiguous(&a, k, 1).unwrap(), || {
                format!("lookahead and (k,1) differ at k={k}")
            })?;
        }
        if !report.exists {
            continue;
        }
        positive += 1;
        let (k, _) = report.witness_pair.unwrap();
        ensure(o.holds(k) && (k == 1 || !o.holds(k - 1)), || {
            format!("witness pair ({k},{k}) is not minimal")
        })?;
        let MinimalKl::Found { k, l } = find_minimal_kl(&a, bound).unwrap() else {
            return Err("minimal pair search failed on a positive instance".into());
        };
        let la = is_k_lookahead_deterministic(&a, k).unwrap();
        ensure(la == is_kl_unambiguous(&a, k, 1).unwrap(), || {
            format!("lookahead and (k,1) differ at k={k}")
        })?;
        let s = build_qds(&a, k, l).map_err(|e| format!("build ({k},{l}): {e}"))?;
        for w in words_up_to(sigma, k + 4) {
            ensure(s.accepts(&w).unwrap() == a.accepts(&w).unwrap(), || {
                format!("({k},{l}) structure differs on {w:?}")
            })?;
        }
        built += 1;
    }
    let elapsed = start.elapsed();
    ensure(elapsed <= ORACLE_BUDGET, || {
        format!("took {elapsed:.1?}, budget {ORACLE_BUDGET:?}")
    })?;
    Ok(format!(
        "{ORACLE_INSTANCES} NFAs, {positive} with a pair, {built} structures match"
    ))
}

fn embedding() -> Check {
    let d = samples::nfa(samples::SMALL_DFA);
    let s = dfa_to_qds(&d).map_err(|e| e.to_string())?;
    ensure(s == samples::qds(samples::SMALL_WINDOW1_QDS), || {
        format!("embedding differs:\n{s}")
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    for _ in 0..EMBED_INSTANCES {
        let sigma = rng.gen_range(1..=3);
        let d = random_dfa(rng.gen(), rng.gen_range(1..=6), sigma, rng.gen_range(0.5..1.0), 0.4);
        let s = dfa_to_qds(d.as_nfa()).unwrap();
        for w in words_up_to(sigma, EMBED_WORD_LEN) {
            ensure(s.accepts(&w).unwrap() == d.accepts(&w).unwrap(), || {
                format!("differs on {w:?}")
            })?;
        }
    }
    Ok(format!(
        "reference 6-state structure reproduced; {EMBED_INSTANCES} random DFAs preserved"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("exponential gap", gap),
        ("worked (k,l) example", worked_example),
        ("construction", construction),
        ("windowed membership", membership),
        ("trimming", trimming),
        ("reduction", reduction),
        ("oracle equivalence", oracle),
        ("DFA embedding", embedding),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {} {name} ({secs:.2}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name} ({secs:.2}s): {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
