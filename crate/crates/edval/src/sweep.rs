//! Acceptance sweeps: every cross-check the calculator must survive, as
//! data-parallel batch jobs with pinned seeds.
//!
//! Each criterion returns a [`CriterionOutcome`]; the acceptance test
//! target and the CLI `sweep` subcommand both run [`run_all`] and render
//! one pass/fail line per criterion. Case evaluation fans out over rayon
//! when the `parallel` feature is on and degrades to a sequential loop
//! otherwise; outputs are order-preserving either way.

use num_bigint::BigInt;
use num_traits::One;

use crate::claims;
use crate::corpus;
use crate::ed::{self, Classification};
use crate::matrix;
use crate::symbol::SymbolClass;
use crate::util;

/// Order-preserving map over a case list; parallel when built with the
/// `parallel` feature, sequential otherwise.
pub fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Sequential twin of [`par_map`], kept unconditionally for benchmarks.
pub fn seq_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    pub id: usize,
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl CriterionOutcome {
    fn collect(id: usize, name: &'static str, results: Vec<Option<String>>) -> Self {
        let cases = results.len();
        let failures = results.into_iter().flatten().collect();
        CriterionOutcome {
            id,
            name,
            cases,
            failures,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// One rendered pass/fail line, failures truncated.
    pub fn summary_line(&self) -> String {
        if self.passed() {
            format!(
                "criterion {:02} PASS  {} ({} cases)",
                self.id, self.name, self.cases
            )
        } else {
            let shown: Vec<&str> = self.failures.iter().take(3).map(String::as_str).collect();
            format!(
                "criterion {:02} FAIL  {} ({} of {} cases failed): {}{}",
                self.id,
                self.name,
                self.failures.len(),
                self.cases,
                shown.join("; "),
                if self.failures.len() > 3 { "; ..." } else { "" }
            )
        }
    }
}

fn seed(base: u64, offset: Option<u64>) -> u64 {
    base ^ offset.unwrap_or(0)
}

/// Both answers for one degree-2 class: the contraction route and the
/// elementary-divisor route.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OraclePair {
    pub rho: usize,
    pub contraction_factors: Vec<BigInt>,
    pub i0: usize,
    pub brauer_factors: Vec<BigInt>,
}

pub fn oracle_pair(c: &SymbolClass) -> OraclePair {
    let group = ed::contraction_group(&c.wedge_valuation());
    let (lifted, n) = c.at_common_level();
    let m = ed::brauer_matrix(&lifted).expect("degree-2 corpus");
    let inv = ed::brauer_invariants(&m, c.p(), n).expect("skew by construction");
    OraclePair {
        rho: group.min_generators(),
        contraction_factors: group.factors().to_vec(),
        i0: inv.i0,
        brauer_factors: inv.factors,
    }
}

pub fn oracle_pairs(classes: &[SymbolClass]) -> Vec<OraclePair> {
    par_map(classes, oracle_pair)
}

pub fn oracle_pairs_sequential(classes: &[SymbolClass]) -> Vec<OraclePair> {
    seq_map(classes, oracle_pair)
}

#[cfg(feature = "parallel")]
pub fn oracle_pairs_parallel(classes: &[SymbolClass]) -> Vec<OraclePair> {
    use rayon::prelude::*;
    classes.par_iter().map(oracle_pair).collect()
}

// ---------------------------------------------------------------------
// criteria
// ---------------------------------------------------------------------

/// 1: the r*d-variable families have width exactly r*d with all invariant
/// factors p^n, for r, d in 1..=3, p in {2, 3}, n in 1..=2.
pub fn generic_family() -> CriterionOutcome {
    let mut cases = Vec::new();
    for r in 1..=3usize {
        for d in 1..=3usize {
            for p in [2u64, 3] {
                for n in 1..=2u32 {
                    cases.push((r, d, p, n));
                }
            }
        }
    }
    let results = par_map(&cases, |&(r, d, p, n)| {
        let class = SymbolClass::generic(r, d, p, n).expect("parameters in contract");
        let report = ed::ed_report(&class, false);
        let pn = util::pow_big(p, n);
        if report.rho != r * d {
            return Some(format!(
                "generic(r={r}, d={d}, p={p}, n={n}): width {} != r*d = {}",
                report.rho,
                r * d
            ));
        }
        if !report.exact {
            return Some(format!("generic(r={r}, d={d}, p={p}, n={n}): not exact"));
        }
        if !report.a_omega.factors().iter().all(|f| *f == pn) {
            return Some(format!(
                "generic(r={r}, d={d}, p={p}, n={n}): factors {:?} not all {pn}",
                report.a_omega.factors()
            ));
        }
        None
    });
    CriterionOutcome::collect(1, "generic family widths", results)
}

/// 2: block degree-2 families have unit elementary divisors and
/// i0 = rho = 2r, for r <= 4, p in {2, 3}, n <= 3.
pub fn block_family() -> CriterionOutcome {
    let mut cases = Vec::new();
    for r in 1..=4usize {
        for p in [2u64, 3] {
            for n in 1..=3u32 {
                cases.push((r, p, n));
            }
        }
    }
    let results = par_map(&cases, |&(r, p, n)| {
        let class = SymbolClass::block_brauer(r, p, n).expect("parameters in contract");
        let report = ed::ed_report(&class, false);
        let block = report.brauer.as_ref().expect("degree 2");
        if !block.divisors.iter().all(BigInt::is_one) {
            return Some(format!(
                "block(r={r}, p={p}, n={n}): divisors {:?} not all 1",
                block.divisors
            ));
        }
        if block.i0 != 2 * r || report.rho != 2 * r {
            return Some(format!(
                "block(r={r}, p={p}, n={n}): i0 {} rho {} expected {}",
                block.i0,
                report.rho,
                2 * r
            ));
        }
        None
    });
    CriterionOutcome::collect(2, "block family divisors", results)
}

/// 3: chain families have width 2r + 1 for r <= 4 at p = 2; r = 3 and
/// r = 4 reproduce the known values 7 and 9.
pub fn chain_family() -> CriterionOutcome {
    let cases: Vec<usize> = (1..=4).collect();
    let results = par_map(&cases, |&r| {
        let class = SymbolClass::chain(r, 2).expect("r >= 1");
        let report = ed::ed_report(&class, false);
        if report.rho != 2 * r + 1 || !report.exact {
            return Some(format!(
                "chain(r={r}): width {} expected {}",
                report.rho,
                2 * r + 1
            ));
        }
        None
    });
    CriterionOutcome::collect(3, "chain family widths", results)
}

/// 4: on 500 seeded degree-2 classes the two computation routes agree:
/// i0 = rho and identical invariant factors.
pub fn degree2_oracle(offset: Option<u64>) -> CriterionOutcome {
    let classes = corpus::random_degree2_classes(500, seed(corpus::DEGREE2_SEED, offset));
    let results = par_map(&classes, |c| {
        let pair = oracle_pair(c);
        if pair.rho != pair.i0 {
            return Some(format!(
                "class {:?}: contraction width {} vs brauer i0 {}",
                c.render(),
                pair.rho,
                pair.i0
            ));
        }
        if pair.contraction_factors != pair.brauer_factors {
            return Some(format!(
                "class {:?}: factors {:?} vs {:?}",
                c.render(),
                pair.contraction_factors,
                pair.brauer_factors
            ));
        }
        None
    });
    CriterionOutcome::collect(4, "degree-2 oracle agreement", results)
}

/// 5: width is even on the whole degree-2 corpus.
pub fn degree2_parity(offset: Option<u64>) -> CriterionOutcome {
    let classes = corpus::random_degree2_classes(500, seed(corpus::DEGREE2_SEED, offset));
    let results = par_map(&classes, |c| {
        let rho = ed::width(&c.wedge_valuation());
        if !rho.is_multiple_of(2) {
            return Some(format!("class {:?}: odd width {}", c.render(), rho));
        }
        None
    });
    CriterionOutcome::collect(5, "degree-2 width parity", results)
}

/// 6: the width gap: homogeneous degree-d classes never have width in
/// {1, ..., d-1} or d+1, and width 0 means the image vanished.
pub fn width_gap(offset: Option<u64>) -> CriterionOutcome {
    let classes = corpus::random_homogeneous_classes(500, seed(corpus::HOMOGENEOUS_SEED, offset));
    let results = par_map(&classes, |c| {
        let d = c.homogeneous_degree().expect("corpus is homogeneous");
        let omega = c.wedge_valuation();
        let rho = ed::width(&omega);
        if (1..d).contains(&rho) || rho == d + 1 {
            return Some(format!(
                "class {:?}: width {} in the forbidden gap for degree {}",
                c.render(),
                rho,
                d
            ));
        }
        if (rho == 0) != omega.is_zero() {
            return Some(format!(
                "class {:?}: width 0 iff zero violated (width {})",
                c.render(),
                rho
            ));
        }
        // classification must agree and never abort
        if !omega.is_zero() {
            let cl = ed::classify(&omega).expect("homogeneous");
            let expect = if rho <= d {
                Classification::Symbol
            } else {
                Classification::NonSymbol
            };
            if cl != expect {
                return Some(format!("class {:?}: classified {cl}", c.render()));
            }
        }
        None
    });
    CriterionOutcome::collect(6, "width gap", results)
}

/// 7: witnesses are sound (membership holds, rank = width) on both random
/// corpora, and any lattice passing membership has rank >= width.
pub fn witness_soundness(offset: Option<u64>) -> CriterionOutcome {
    let mut classes = corpus::random_degree2_classes(500, seed(corpus::DEGREE2_SEED, offset));
    classes.extend(corpus::random_homogeneous_classes(
        500,
        seed(corpus::HOMOGENEOUS_SEED, offset),
    ));
    let mut results = par_map(&classes, |c| {
        let omega = c.wedge_valuation();
        let group = ed::contraction_group(&omega);
        let wit = ed::witness(&omega);
        if wit.rank() != group.min_generators() {
            return Some(format!(
                "class {:?}: witness rank {} != width {}",
                c.render(),
                wit.rank(),
                group.min_generators()
            ));
        }
        if !ed::membership(&omega, &wit) {
            return Some(format!("class {:?}: witness fails membership", c.render()));
        }
        None
    });

    // per corpus, 100 extra lattices: half extend the witness (membership
    // must hold), half are unrelated (membership only rarely holds); every
    // lattice passing membership must have rank >= width
    let mut rng = corpus::rng(seed(corpus::LATTICE_SEED, offset));
    let mut extra_cases = Vec::new();
    for corpus_idx in 0..2usize {
        let pool = if corpus_idx == 0 {
            &classes[..500]
        } else {
            &classes[500..]
        };
        for k in 0..100usize {
            let class = &pool[rand::Rng::gen_range(&mut rng, 0..pool.len())];
            let omega = class.wedge_valuation();
            let lattice = if k % 2 == 0 {
                let extension = corpus::random_lattice(&mut rng, omega.rank());
                ed::witness(&omega).join(&extension).expect("same ambient")
            } else {
                corpus::random_lattice(&mut rng, omega.rank())
            };
            extra_cases.push((omega, lattice, k % 2 == 0, class.render()));
        }
    }
    results.extend(par_map(&extra_cases, |(omega, lattice, extends, name)| {
        let rho = ed::width(omega);
        let inside = ed::membership(omega, lattice);
        if *extends && !inside {
            return Some(format!("class {name}: witness extension fails membership"));
        }
        if inside && lattice.rank() < rho {
            return Some(format!(
                "class {name}: lattice of rank {} below width {}",
                lattice.rank(),
                rho
            ));
        }
        None
    }));
    CriterionOutcome::collect(7, "witness soundness and minimality", results)
}

/// 8: Smith decomposition contract on 500 random matrices up to 6x6 with
/// entries in [-20, 20]; minors-gcd agreement up to 5x5.
pub fn snf_contract(offset: Option<u64>) -> CriterionOutcome {
    let matrices = corpus::random_matrices(500, 6, 20, seed(corpus::SNF_SEED, offset));
    let results = par_map(&matrices, |m| {
        let s = matrix::smith(m);
        let umv = s.u.mul(m).expect("shapes").mul(&s.v).expect("shapes");
        if umv != s.d {
            return Some(format!("{m:?}: u*m*v != d"));
        }
        if !s.u.is_unimodular() || !s.v.is_unimodular() {
            return Some(format!("{m:?}: transform not unimodular"));
        }
        let divisors = s.divisors();
        for w in divisors.windows(2) {
            let chain_ok = if w[0] == BigInt::from(0) {
                w[1] == BigInt::from(0)
            } else {
                use num_integer::Integer;
                w[1].mod_floor(&w[0]) == BigInt::from(0)
            };
            if !chain_ok {
                return Some(format!("{m:?}: divisor chain broken: {divisors:?}"));
            }
        }
        if m.rows().min(m.cols()) <= 5 {
            let oracle = matrix::minors_gcd_divisors(m).expect("within guard");
            if oracle != divisors {
                return Some(format!(
                    "{m:?}: smith {divisors:?} vs minors-gcd {oracle:?}"
                ));
            }
        }
        None
    });
    CriterionOutcome::collect(8, "smith normal form contract", results)
}

/// 9: exhaustive zero-sum subsets for 3 <= d <= 6, d+2 <= n <= 12, all j;
/// and the congruence families realize width nv for nv in 5..=9.
pub fn subset_claim() -> CriterionOutcome {
    let mut cases = Vec::new();
    for d in 3..=6usize {
        for n in (d as u64 + 2)..=12 {
            for j in 0..n {
                cases.push((n, d, j));
            }
        }
    }
    let mut results = par_map(&cases, |&(n, d, j)| {
        match claims::find_zero_sum_subset(n, d, j) {
            Err(e) => Some(format!("(n={n}, d={d}, j={j}): {e}")),
            Ok(w) => {
                let distinct = w.set.len() == d
                    && w.set.windows(2).all(|x| x[0] < x[1])
                    && w.set.contains(&j)
                    && w.set.iter().sum::<u64>() % n == 0;
                if distinct {
                    None
                } else {
                    Some(format!(
                        "(n={n}, d={d}, j={j}): invalid witness {:?}",
                        w.set
                    ))
                }
            }
        }
    });
    let congruence_cases: Vec<usize> = (5..=9).collect();
    results.extend(par_map(&congruence_cases, |&nv| {
        let class = SymbolClass::congruence(nv, 3, 2).expect("bounds checked");
        let rho = ed::width(&class.wedge_valuation());
        if rho != nv {
            return Some(format!("congruence(nv={nv}): width {rho} != {nv}"));
        }
        None
    }));
    CriterionOutcome::collect(9, "zero-sum subsets and congruence widths", results)
}

/// 10: prime-to-p index sublattices induce bijections on wedge powers mod
/// p^n, on 100 random instances.
pub fn prime_index(offset: Option<u64>) -> CriterionOutcome {
    let cases = corpus::prime_index_cases(100, seed(corpus::PRIME_INDEX_SEED, offset));
    let results = par_map(&cases, |case| {
        match claims::verify_prime_index_iso(&case.d_values, &case.t, case.p, case.n) {
            Ok(true) => None,
            Ok(false) => Some(format!(
                "d={:?} p={} n={}: map not bijective",
                case.d_values, case.p, case.n
            )),
            Err(e) => Some(format!(
                "d={:?} p={} n={}: {e}",
                case.d_values, case.p, case.n
            )),
        }
    });
    CriterionOutcome::collect(10, "prime-to-p index isomorphism", results)
}

/// 11: 50 constructed overlattice pairs satisfying the kill hypothesis
/// have width <= 2n, including the hand-checked index-p case with
/// width exactly 2n.
pub fn split_bound(offset: Option<u64>) -> CriterionOutcome {
    let cases = corpus::split_cases(50, seed(corpus::SPLIT_SEED, offset));
    let results = par_map(&cases, |case| {
        match ed::split_bound_check(&case.multivector, &case.overlattice, case.p, case.n) {
            Err(e) => Some(format!("split case: {e}")),
            Ok(false) => Some("split bound violated".to_string()),
            Ok(true) => {
                let rho = ed::width(&case.multivector);
                if rho != case.expected_width || rho > 2 * case.n as usize {
                    Some(format!(
                        "split case: width {rho} expected {} within 2n = {}",
                        case.expected_width,
                        2 * case.n
                    ))
                } else {
                    None
                }
            }
        }
    });
    CriterionOutcome::collect(11, "split-degree bound", results)
}

/// Runs every criterion in order. `offset` perturbs the random corpora
/// seeds; `None` is the pinned acceptance configuration.
pub fn run_all(offset: Option<u64>) -> Vec<CriterionOutcome> {
    vec![
        generic_family(),
        block_family(),
        chain_family(),
        degree2_oracle(offset),
        degree2_parity(offset),
        width_gap(offset),
        witness_soundness(offset),
        snf_contract(offset),
        subset_claim(),
        prime_index(offset),
        split_bound(offset),
    ]
}
