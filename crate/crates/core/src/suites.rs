//! Named verification suites, shared by the acceptance target and `loopdiag check`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::time::{Duration, Instant};

use itertools::Itertools;
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::catalog::{self, build_tcom};
use crate::chain::{d_squared_is_zero, differential, Chain};
use crate::compose::{compose, compose_tilde, identity_of, s_bar, singular_vertices};
use crate::diagram::{disjoint_union, LoopedDiagram, Point, Signature};
use crate::enumerate::{enumerate_generators, enumerate_slice, generators_of_degree, EnumConfig, SparseMatrix};
use crate::error::{Error, Result};
use crate::frobenius::{make_broken_polynomial, make_truncated_polynomial, make_z2_group_algebra, FrobeniusAlgebra};
use crate::hochschild::oracle::{connes_b_oracle, shuffle_oracle};
use crate::hochschild::{d_hh, normalized_basis, HochschildElement, HochschildSum, JEvaluator, Profile};
use crate::homology::homology;
use crate::random::{
    random_composable_pair, random_composable_triple, random_diagram, random_signature, RandomConfig,
};
use crate::snf::rank_mod_prime;
use crate::split::{nonconstant_part, p_cst};

pub const SUITE_NAMES: &[&str] = &[
    "dsquare",
    "chainmap",
    "identity",
    "mu-delta",
    "shuffle",
    "hochschild",
    "splitting",
    "cacti-betti",
    "null-homotopy",
    "frobenius-axioms",
    "tcom",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Timing is left out so that identical runs give identical bytes.
    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "passed": self.passed(),
            "checks": self.checks.iter().map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail})).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {} ({:.2?})", self.suite, if self.passed() { "PASS" } else { "FAIL" }, self.elapsed)?;
        for c in &self.checks {
            writeln!(f, "  [{}] {}: {}", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SuiteOptions {
    /// Caps the degrees the enumerating suites visit.
    pub max_degree: Option<usize>,
    /// Added to every fixed seed of the randomized checks.
    pub seed: u64,
}

impl SuiteOptions {
    fn cap(&self, k: usize) -> usize {
        self.max_degree.map_or(k, |m| m.min(k))
    }

    fn rng(&self, base: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(base.wrapping_add(self.seed))
    }
}

pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<SuiteReport> {
    let start = Instant::now();
    let checks = match name {
        "dsquare" => dsquare(opts),
        "chainmap" => chainmap(opts),
        "identity" => vec![identities(opts)],
        "mu-delta" => mu_delta(),
        "shuffle" => shuffle(),
        "hochschild" => hochschild(opts),
        "splitting" => splitting(opts),
        "cacti-betti" => cacti_betti(opts),
        "null-homotopy" => null_homotopy(opts),
        "frobenius-axioms" => frobenius_axioms(),
        "tcom" => tcom(),
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    Ok(SuiteReport { suite: name.to_string(), checks, elapsed: start.elapsed() })
}

fn check(name: &str, f: impl FnOnce() -> Result<(bool, String)>) -> Check {
    match f() {
        Ok((passed, detail)) => Check { name: name.to_string(), passed, detail },
        Err(e) => Check { name: name.to_string(), passed: false, detail: format!("error: {e}") },
    }
}

fn any_diagram(_: &LoopedDiagram) -> bool {
    true
}

/// `(n_loops, m_in, m_out)` of the exhaustive d² domain. Two loops come without
/// plain leaves and share a word length budget.
const DSQUARE_LEAVES: &[(usize, usize, usize)] =
    &[(0, 0, 0), (0, 1, 0), (0, 0, 1), (0, 1, 1), (1, 0, 0), (1, 1, 0), (1, 0, 1), (2, 0, 0)];
const DSQUARE_TOTAL_VALENCE: usize = 5;

fn dsquare(opts: &SuiteOptions) -> Vec<Check> {
    let exhaustive = check("exhaustive", || {
        let mut count = 0;
        for n_white in 1..=2 {
            for &(n_loops, m_in, m_out) in DSQUARE_LEAVES {
                let sig = Signature::new(n_loops, m_in, n_white, m_out);
                let two = n_loops == 2;
                let cfg = EnumConfig {
                    max_genus: if two { 0 } else { 1 },
                    max_word_len: 4,
                    genus_slack: false,
                    max_total_word_len: two.then_some(4),
                    guard: 5_000_000,
                    ..EnumConfig::default()
                };
                for k in 0..=opts.cap(DSQUARE_TOTAL_VALENCE - n_white) {
                    let gens = generators_of_degree(sig, k, &cfg, &any_diagram)?;
                    if let Some(bad) = gens.iter().find(|d| !d_squared_is_zero(d)) {
                        return Ok((false, format!("d² ≠ 0 on {bad}")));
                    }
                    count += gens.len();
                }
            }
        }
        Ok((true, format!("{count} diagrams")))
    });
    let random = check("random", || {
        let mut rng = opts.rng(101);
        let cfg = RandomConfig { max_valence: 5, max_genus: 2, max_word_len: 8, join: 0.5 };
        for _ in 0..1000 {
            let sig = random_signature(&mut rng, 3, 1, (1, 3), 1);
            let d = random_diagram(&mut rng, sig, &cfg);
            if !d_squared_is_zero(&d) {
                return Ok((false, format!("d² ≠ 0 on {d}")));
            }
        }
        Ok((true, "1000 diagrams".into()))
    });
    vec![exhaustive, random]
}

fn sign_of_degree(d: usize) -> BigInt {
    BigInt::from(if d.is_multiple_of(2) { 1 } else { -1 })
}

fn chainmap(opts: &SuiteOptions) -> Vec<Check> {
    let leibniz = check("leibniz", || {
        let mut rng = opts.rng(7);
        let cfg = RandomConfig::default();
        let mut nonzero = 0;
        for _ in 0..500 {
            let (y, x) = random_composable_pair(&mut rng, &cfg, opts.cap(3));
            let (cy, cx) = (Chain::from(y.clone()), Chain::from(x.clone()));
            let yx = compose(&cy, &cx)?;
            nonzero += usize::from(!yx.is_zero());
            let rhs = compose(&differential(&cy), &cx)?.scaled(&sign_of_degree(x.degree())).plus(&compose(&cy, &differential(&cx))?);
            if differential(&yx) != rhs {
                return Ok((false, format!("d(y∘x) differs for y = {y}, x = {x}")));
            }
        }
        Ok((nonzero > 100, format!("500 pairs, {nonzero} nonzero composites")))
    });
    let assoc = check("associativity", || {
        let mut rng = opts.rng(11);
        let cfg = RandomConfig { max_valence: 3, ..RandomConfig::default() };
        for _ in 0..200 {
            let (z, y, x) = random_composable_triple(&mut rng, &cfg, opts.cap(2));
            let (cz, cy, cx) = (Chain::from(z.clone()), Chain::from(y.clone()), Chain::from(x.clone()));
            if compose(&compose(&cz, &cy)?, &cx)? != compose(&cz, &compose(&cy, &cx)?)? {
                return Ok((false, format!("(z∘y)∘x ≠ z∘(y∘x) for z = {z}, y = {y}, x = {x}")));
            }
        }
        Ok((true, "200 triples".into()))
    });
    vec![leibniz, assoc, identities(opts)]
}

fn identities(opts: &SuiteOptions) -> Check {
    check("identities", || {
        let mut rng = opts.rng(13);
        let cfg = RandomConfig::default();
        for _ in 0..200 {
            let (_, x) = random_composable_pair(&mut rng, &cfg, opts.cap(3));
            let s = x.sig();
            let cx = Chain::from(x.clone());
            if compose(&Chain::from(identity_of(s.n_white, s.m_out)), &cx)? != cx
                || compose(&cx, &Chain::from(identity_of(s.n_loops, s.m_in)))? != cx
            {
                return Ok((false, format!("identity fails on {x}")));
            }
        }
        Ok((true, "200 diagrams, both sides".into()))
    })
}

fn mu_delta() -> Vec<Check> {
    vec![check("mu∘Delta = d(D)", || {
        let lhs = compose(&catalog::mu(), &Chain::from(catalog::delta()))?;
        let rhs = differential(&catalog::d_element());
        Ok((lhs == rhs && lhs.len() == 4, format!("{} terms", lhs.len())))
    })]
}

/// Parity of the permutation sorting `seq`, as ±1.
fn sort_sign(seq: &[usize]) -> i64 {
    let inversions = seq.iter().tuple_combinations().filter(|(a, b)| a > b).count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Interleavings of `a` and `b` with the sign of the sorting permutation.
fn shuffles_of(a: &[usize], b: &[usize]) -> BTreeMap<Vec<usize>, i64> {
    let n = a.len() + b.len();
    (0..n)
        .combinations(a.len())
        .map(|pos| {
            let (mut ia, mut ib) = (a.iter(), b.iter());
            let seq: Vec<usize> =
                (0..n).map(|i| if pos.contains(&i) { *ia.next().unwrap() } else { *ib.next().unwrap() }).collect();
            let s = sort_sign(&seq);
            (seq, s)
        })
        .collect()
}

/// Reads the leaves at slots `2..` of a one-vertex diagram.
fn leaf_sequence(d: &LoopedDiagram) -> Option<Vec<usize>> {
    let k = d.diagram.valence(1);
    (2..=k)
        .map(|t| {
            let b = d.diagram.block_of(Point::Slot(1, t))?;
            let leaves: Vec<usize> =
                d.diagram.blocks[b].points.iter().filter_map(|p| if let Point::Leaf(l) = p { Some(*l) } else { None }).collect();
            (leaves.len() == 1).then(|| leaves[0])
        })
        .collect()
}

fn pr_on_corollas(j1: usize, j2: usize) -> Result<Chain> {
    compose(&Chain::from(catalog::pr()), &Chain::from(disjoint_union(&catalog::l(j1), &catalog::l(j2))))
}

fn shuffle() -> Vec<Check> {
    let figure = check("pr∘(l2⊔l3)", || {
        let c = pr_on_corollas(2, 3)?;
        // Ordered by the position of leaf 2 among the slots.
        let mut terms: Vec<(usize, i64)> = Vec::new();
        for (d, k) in c.iter() {
            let Some(seq) = leaf_sequence(d) else { return Ok((false, format!("unexpected summand {d}"))) };
            terms.push((seq.iter().position(|&l| l == 2).unwrap_or(usize::MAX), i64::try_from(k).unwrap_or(0)));
        }
        terms.sort();
        let signs: Vec<i64> = terms.iter().map(|t| t.1).collect();
        Ok((signs == [1, -1, 1], format!("signs {signs:?}")))
    });
    let counts = check("shuffle counts", || {
        let mut cases = 0;
        for j1 in 1..=6usize {
            for j2 in 1..=(7 - j1) {
                let c = pr_on_corollas(j1, j2)?;
                let mut got = BTreeMap::new();
                for (d, k) in c.iter() {
                    let Some(seq) = leaf_sequence(d) else { return Ok((false, format!("({j1},{j2}): unexpected summand {d}"))) };
                    got.insert(seq, i64::try_from(k).unwrap_or(0));
                }
                let a: Vec<usize> = (2..=j1).collect();
                let b: Vec<usize> = (j1 + 2..=j1 + j2).collect();
                let want = shuffles_of(&a, &b);
                let binom = num_integer::binomial(j1 + j2 - 2, j1 - 1);
                if got != want || got.len() != binom {
                    return Ok((false, format!("({j1},{j2}): {} summands, expected {binom}", got.len())));
                }
                cases += 1;
            }
        }
        Ok((true, format!("{cases} pairs (j1, j2) with j1 + j2 ≤ 7")))
    });
    vec![figure, counts]
}

fn each_basis(a: &FrobeniusAlgebra, p: &Profile, mut f: impl FnMut(HochschildElement) -> Result<bool>) -> Result<(bool, usize)> {
    let mut n = 0;
    for idx in normalized_basis(a, p)? {
        n += 1;
        if !f(HochschildElement::basis(p.clone(), idx))? {
            return Ok((false, n));
        }
    }
    Ok((true, n))
}

fn compare_on(
    a: &FrobeniusAlgebra,
    profiles: &[Profile],
    mut f: impl FnMut(&HochschildElement) -> Result<(HochschildSum, HochschildSum)>,
) -> Result<(bool, String)> {
    let mut total = 0;
    for p in profiles {
        let (ok, n) = each_basis(a, p, |h| {
            let (got, want) = f(&h)?;
            Ok(got == want)
        })?;
        total += n;
        if !ok {
            return Ok((false, format!("mismatch on profile {p}")));
        }
    }
    Ok((true, format!("{} profiles, {total} basis tuples", profiles.len())))
}

fn hochschild(opts: &SuiteOptions) -> Vec<Check> {
    let a = make_truncated_polynomial(3);
    let ev = JEvaluator::new();
    let id = check("J(id)", || {
        let profiles: Vec<Profile> = (0..=opts.cap(6)).map(|j| Profile::new(vec![j], 0)).collect();
        compare_on(&a, &profiles, |h| Ok((ev.apply(&a, &Chain::from(catalog::id()), h)?, HochschildSum::from_element(h))))
    });
    let pr = check("J(pr)", || {
        compare_on(&a, &Profile::all_up_to(2, 0, opts.cap(5)), |h| {
            Ok((ev.apply(&a, &Chain::from(catalog::pr()), h)?, shuffle_oracle(&a, h)?))
        })
    });
    let b = check("J(B)", || {
        compare_on(&a, &Profile::all_up_to(1, 0, opts.cap(5)), |h| {
            Ok((ev.apply(&a, &Chain::from(catalog::b()), h)?, connes_b_oracle(&a, h)?))
        })
    });
    vec![id, pr, b]
}

fn rank_of_chains(chains: &[Chain]) -> usize {
    let mut index: HashMap<&LoopedDiagram, usize> = HashMap::new();
    let mut cols = Vec::with_capacity(chains.len());
    for x in chains {
        let mut col = Vec::new();
        for (d, k) in x.iter() {
            let n = index.len();
            col.push((*index.entry(d).or_insert(n), i64::try_from(k).expect("small coefficient")));
        }
        cols.push(col);
    }
    rank_mod_prime(&SparseMatrix { rows: index.len(), cols })
}

fn splitting(opts: &SuiteOptions) -> Vec<Check> {
    let sig = Signature::new(1, 0, 1, 0);
    let cfg = EnumConfig { max_degree: opts.cap(4), max_word_len: 3, genus_slack: false, ..EnumConfig::default() };
    let slice = enumerate_generators(sig, &cfg, &any_diagram);
    let slice = slice.as_ref().map_err(Clone::clone);
    let incl = check("p_cst∘incl = id", || {
        let gens = slice.clone()?;
        let mut n = 0;
        for d in gens.iter().flatten().filter(|d| d.is_partly_constant()) {
            let c = Chain::from(d.clone());
            if p_cst(&c) != c {
                return Ok((false, format!("p_cst moves {d}")));
            }
            n += 1;
        }
        Ok((n > 0, format!("{n} partly constant generators")))
    });
    let dims = check("cst ⊕ >0 dimensions", || {
        let gens = slice.clone()?;
        let mut rows = Vec::new();
        for (k, g) in gens.iter().enumerate() {
            let cst = rank_of_chains(&g.iter().map(|d| p_cst(&Chain::from(d.clone()))).collect::<Vec<_>>());
            let rest = rank_of_chains(&g.iter().map(|d| nonconstant_part(&Chain::from(d.clone())).expand()).collect::<Vec<_>>());
            let n_cst = g.iter().filter(|d| d.is_partly_constant()).count();
            if cst != n_cst || cst + rest != g.len() {
                return Ok((false, format!("degree {k}: {cst} + {rest} ≠ {}", g.len())));
            }
            rows.push(format!("{}={cst}+{rest}", g.len()));
        }
        Ok((true, format!("(1/0,1/0) by degree: {}", rows.join(", "))))
    });
    let through_s_bar = check("y∘x = y ∘̃ s̄(x)", || {
        let mut rng = opts.rng(23);
        let cfg = RandomConfig::default();
        let (mut tested, mut singular) = (0, 0);
        while tested < 200 {
            let (y, x) = random_composable_pair(&mut rng, &cfg, opts.cap(3));
            if y.is_partly_constant() || x.is_partly_constant() {
                continue;
            }
            let (ny, nx) = (nonconstant_part(&y.clone().into()), nonconstant_part(&x.clone().into()));
            if compose(&ny.expand(), &nx.expand())? != compose_tilde(&ny, &s_bar(&nx))?.expand() {
                return Ok((false, format!("differs for y = {y}, x = {x}")));
            }
            singular += usize::from(!singular_vertices(&x).is_empty());
            tested += 1;
        }
        Ok((singular > 20, format!("200 pairs, {singular} with singular vertices")))
    });
    vec![incl, dims, through_s_bar]
}

fn cacti_predicate(d: &LoopedDiagram) -> bool {
    !d.is_partly_constant() && d.is_cacti().unwrap_or(false)
}

fn partly_constant(d: &LoopedDiagram) -> bool {
    d.is_partly_constant()
}

fn cacti_betti(opts: &SuiteOptions) -> Vec<Check> {
    [(1usize, 3usize, 5usize, vec![1usize, 1, 0, 0]), (2, 4, 6, vec![0, 1, 3, 3, 1])]
        .into_iter()
        .map(|(n, max_degree, max_word_len, want)| {
            check(&format!("cacti({n},1)"), || {
                let cfg = EnumConfig {
                    max_degree: opts.cap(max_degree),
                    max_word_len,
                    positive_only: true,
                    genus_slack: false,
                    disjoint_loops: true,
                    ..EnumConfig::default()
                };
                let s = enumerate_slice(Signature::new(n, 0, 1, 0), &cfg, &cacti_predicate, &partly_constant)?;
                let h = homology(&s)?;
                let betti = h.betti();
                let want = &want[..betti.len().min(want.len())];
                Ok((betti == want && h.torsion_free(), format!("dims {:?}, betti {betti:?}, torsion-free {}", s.dims(), h.torsion_free())))
            })
        })
        .collect()
}

fn null_homotopy(opts: &SuiteOptions) -> Vec<Check> {
    let ev = JEvaluator::new();
    let dd = catalog::d_element();
    let mu = catalog::mu();
    let delta = Chain::from(catalog::delta());
    [make_truncated_polynomial(2), make_z2_group_algebra()]
        .into_iter()
        .map(|a| {
            check(&format!("d J(D) - J(D) d = J(mu) J(Delta) over {}", a.name), || {
                compare_on(&a, &Profile::all_up_to(1, 0, opts.cap(4)), |h| {
                    let s = HochschildSum::from_element(h);
                    let lhs = d_hh(&a, &ev.apply(&a, &dd, h)?)?.minus(&ev.apply_sum(&a, &dd, &d_hh(&a, &s)?)?);
                    let rhs = ev.apply_sum(&a, &mu, &ev.apply(&a, &delta, h)?)?;
                    Ok((lhs, rhs))
                })
            })
        })
        .collect()
}

fn frobenius_axioms() -> Vec<Check> {
    let mut out: Vec<Check> = [2, 3, 4]
        .into_iter()
        .map(make_truncated_polynomial)
        .chain([make_z2_group_algebra()])
        .map(|a| {
            let rep = a.check_axioms();
            Check { name: a.name.clone(), passed: rep.passed(), detail: format!("{} axioms checked", rep.checked.len()) }
        })
        .collect();
    let broken = make_broken_polynomial(3);
    let rep = broken.check_axioms();
    let failed: Vec<String> = rep.failures.iter().map(|f| format!("{}: {}", f.axiom, f.detail)).collect();
    out.push(Check {
        name: format!("{} is rejected", broken.name),
        passed: !rep.passed() && rep.failures.iter().any(|f| f.axiom == "commutativity"),
        detail: failed.join("; "),
    });
    out
}

/// All tuples of length `len` with entries in `0..base`.
fn tuples(len: usize, base: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out.into_iter().flat_map(|t| (0..base).map(move |x| [t.clone(), vec![x]].concat())).collect();
    }
    out
}

fn tcom() -> Vec<Check> {
    let example = check("worked example", || {
        let fam = build_tcom((1, 1), &[1, 1, 2, 1], &[1, 2], &[1, 0, 0, 1])?;
        let x = fam.expand();
        let types: Vec<Vec<usize>> = fam.entries.keys().cloned().collect();
        let shape = x.diagrams().all(|d| {
            let f = d.classify();
            d.diagram.valences == [3] && f.positively_oriented && f.positive_boundary
        });
        let ok = x.sig() == Some(Signature::new(2, 2, 1, 1))
            && differential(&x).is_zero()
            && types == [vec![1, 2]]
            && fam.entries[&vec![1, 2]].terms.len() == 2
            && x.len() == 12
            && shape;
        Ok((ok, format!("types {types:?}, {} expanded terms", x.len())))
    });
    let cycles = check("outputs are cycles", || {
        let mut built = 0;
        for (n1, m1) in [(1usize, 0usize), (2, 0), (1, 1), (0, 2), (2, 1)] {
            for (n2, m2) in [(1usize, 0usize), (1, 1), (2, 0)] {
                let inputs = n1 + m1;
                let targets = n2 + m2;
                for f in tuples(inputs, targets) {
                    let f: Vec<usize> = f.iter().map(|x| x + 1).collect();
                    for s in tuples(inputs, 2) {
                        let s: Vec<u8> = s.iter().map(|&x| x as u8).collect();
                        for t in tuples(n1, 3) {
                            if (0..n1).any(|i| f[i] > n2 && t[i] != 0) {
                                continue;
                            }
                            let fam = build_tcom((n2, m2), &f, &t, &s)?;
                            let x = fam.expand();
                            if !differential(&x).is_zero() {
                                return Ok((false, format!("f={f:?} t={t:?} s={s:?} is not a cycle")));
                            }
                            if !x.is_zero() && fam.entries.keys().any(|k| *k != t) {
                                return Ok((false, format!("f={f:?} t={t:?} s={s:?} has the wrong type")));
                            }
                            built += 1;
                        }
                    }
                }
            }
        }
        Ok((built > 500, format!("{built} elements")))
    });
    vec![example, cycles]
}
