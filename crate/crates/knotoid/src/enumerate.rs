//! Exhaustive generation of realizable flat diagrams and the verification
//! campaigns built on it.
//!
//! Diagrams are generated as perfect matchings of `2n` visit positions
//! (labels assigned in first-occurrence order, so every code is canonical
//! and produced exactly once) crossed with all `2^n` sign vectors and
//! filtered by the sphericity check. The order is deterministic, and a
//! sharding key over the first `ceil(n/2)` visit tokens splits the stream
//! into independent slices whose merged results are identical to a
//! single-shard run.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::codec::{Diagram, FlatDiagram, Sign};
use crate::exec;
use crate::gamma::{self, LemmaAudit};
use crate::planar;
use crate::primality;

/// One slice of a sharded run: `index` of `count`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shard {
    pub index: u32,
    pub count: u32,
}

impl Shard {
    pub fn full() -> Self {
        Shard { index: 0, count: 1 }
    }

    /// Parse `i/m` with `0 <= i < m`.
    pub fn parse(s: &str) -> Option<Self> {
        let (i, m) = s.split_once('/')?;
        let index: u32 = i.trim().parse().ok()?;
        let count: u32 = m.trim().parse().ok()?;
        (count > 0 && index < count).then_some(Shard { index, count })
    }

    fn contains(&self, key: u64) -> bool {
        key % self.count as u64 == self.index as u64
    }
}

/// All perfect matchings of `2n` positions, encoded as canonical label
/// sequences. Deterministic order: the smallest unpaired position is paired
/// with each larger position in increasing order.
fn pairings(n: u32) -> Vec<Vec<u32>> {
    let len = 2 * n as usize;
    let mut out = Vec::new();
    let mut labels = vec![0u32; len];
    fn rec(labels: &mut Vec<u32>, next_label: u32, out: &mut Vec<Vec<u32>>) {
        let Some(first) = labels.iter().position(|&l| l == 0) else {
            out.push(labels.clone());
            return;
        };
        labels[first] = next_label;
        for second in first + 1..labels.len() {
            if labels[second] == 0 {
                labels[second] = next_label;
                rec(labels, next_label + 1, out);
                labels[second] = 0;
            }
        }
        labels[first] = 0;
    }
    rec(&mut labels, 1, &mut out);
    out
}

fn shard_key(labels: &[u32], signs: &[Sign]) -> u64 {
    let n = signs.len();
    let prefix = n.div_ceil(2);
    let mut key = 0xcbf29ce484222325u64;
    for &l in labels.iter().take(prefix) {
        let s = match signs[l as usize - 1] {
            Sign::Plus => 0u64,
            Sign::Minus => 1,
        };
        key = key.wrapping_mul(0x100000001b3).wrapping_add(2 * l as u64 + s);
    }
    key
}

fn sign_vector(n: u32, bits: u64) -> Vec<Sign> {
    (0..n)
        .map(|i| if bits >> i & 1 == 0 { Sign::Plus } else { Sign::Minus })
        .collect()
}

/// Realizable signed diagrams of one pairing that fall into the shard.
fn signed_variants(labels: &[u32], n: u32, shard: Shard) -> Vec<FlatDiagram> {
    let mut out = Vec::new();
    for bits in 0..1u64 << n {
        let signs = sign_vector(n, bits);
        if !shard.contains(shard_key(labels, &signs)) {
            continue;
        }
        let seq: Vec<crate::codec::CrossingId> =
            labels.iter().map(|&l| crate::codec::CrossingId(l)).collect();
        let d = FlatDiagram::from_canonical_unchecked(seq, signs);
        if planar::trace_faces(&d).is_spherical() {
            out.push(d);
        }
    }
    out
}

/// All realizable flat diagrams with exactly `n` crossings, canonical codes,
/// deterministic order.
pub fn generate_flat_codes(n: u32) -> impl Iterator<Item = FlatDiagram> {
    generate_flat_codes_sharded(n, Shard::full())
}

/// The shard's slice of [`generate_flat_codes`].
pub fn generate_flat_codes_sharded(n: u32, shard: Shard) -> impl Iterator<Item = FlatDiagram> {
    pairings(n)
        .into_iter()
        .flat_map(move |labels| signed_variants(&labels, n, shard))
}

/// Aggregate results of a crossing-number-versus-height sweep at one size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub n: u32,
    pub total: u64,
    pub prime: u64,
    pub by_height: BTreeMap<u32, u64>,
    /// Diagrams attaining `n = 2h`.
    pub equality: u64,
    /// Diagrams with `n < 2h`; must stay empty.
    pub violations: Vec<String>,
}

impl Census {
    pub fn empty(n: u32) -> Self {
        Census {
            n,
            total: 0,
            prime: 0,
            by_height: BTreeMap::new(),
            equality: 0,
            violations: Vec::new(),
        }
    }

    /// Associative, commutative merge; shard results add up to the full run.
    pub fn merge(mut self, other: Census) -> Census {
        debug_assert_eq!(self.n, other.n);
        self.total += other.total;
        self.prime += other.prime;
        for (h, c) in other.by_height {
            *self.by_height.entry(h).or_insert(0) += c;
        }
        self.equality += other.equality;
        self.violations.extend(other.violations);
        self.violations.sort();
        self
    }

    fn record(&mut self, f: &FlatDiagram) {
        let n = f.crossings() as u32;
        let (h, _) = planar::height(f);
        self.total += 1;
        if primality::is_prime(f).0 {
            self.prime += 1;
        }
        *self.by_height.entry(h).or_insert(0) += 1;
        if n == 2 * h {
            self.equality += 1;
        }
        if n < 2 * h {
            self.violations.push(format!("{}: n={} < 2h={}", f.code(), n, 2 * h));
        }
    }
}

fn census_for(n: u32, shard: Shard, sequential: bool) -> Census {
    let work = move |labels: Vec<u32>| {
        let mut census = Census::empty(n);
        for d in signed_variants(&labels, n, shard) {
            census.record(&d);
        }
        census
    };
    let items = pairings(n);
    let mut census = if sequential {
        exec::fold_items_seq(items, || Census::empty(n), work, Census::merge)
    } else {
        exec::fold_items(items, || Census::empty(n), work, Census::merge)
    };
    census.violations.sort();
    census
}

/// Check `n >= 2 * height` over every realizable diagram with at most
/// `n_max` crossings; returns one census per size.
pub fn verify_theorem_campaign(n_max: u32) -> Vec<Census> {
    verify_theorem_campaign_sharded(n_max, Shard::full())
}

pub fn verify_theorem_campaign_sharded(n_max: u32, shard: Shard) -> Vec<Census> {
    (0..=n_max).map(|n| census_for(n, shard, false)).collect()
}

/// Always-sequential variant with identical output; the benchmark suite
/// compares the two.
pub fn verify_theorem_campaign_sequential(n_max: u32) -> Vec<Census> {
    (0..=n_max).map(|n| census_for(n, Shard::full(), true)).collect()
}

/// Aggregate results of the structural sweep: for prime diagrams every
/// shortcut-relative check, for non-prime ones the decomposition equalities.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MachineryReport {
    pub n_max: u32,
    pub prime_checked: u64,
    pub nonprime_checked: u64,
    /// `category: code` for every failed check; must stay empty.
    pub failures: Vec<String>,
    /// Informational: the auxiliary inequalities recorded for the shortcut
    /// returned by the existence scan.
    pub c0_q_holds: u64,
    pub c0_q_fails: u64,
    pub q_c2_holds: u64,
    pub q_c2_fails: u64,
    pub audit: LemmaAudit,
    /// Smallest canonical code exhibiting each non-vacuous check, keyed by
    /// category.
    pub witnesses: BTreeMap<String, String>,
}

impl MachineryReport {
    pub fn merge(mut self, other: MachineryReport) -> MachineryReport {
        self.n_max = self.n_max.max(other.n_max);
        self.prime_checked += other.prime_checked;
        self.nonprime_checked += other.nonprime_checked;
        self.failures.extend(other.failures);
        self.failures.sort();
        self.c0_q_holds += other.c0_q_holds;
        self.c0_q_fails += other.c0_q_fails;
        self.q_c2_holds += other.q_c2_holds;
        self.q_c2_fails += other.q_c2_fails;
        self.audit = self.audit.merge(other.audit);
        for (k, v) in other.witnesses {
            match self.witnesses.get(&k) {
                Some(cur) if cur <= &v => {}
                _ => {
                    self.witnesses.insert(k, v);
                }
            }
        }
        self
    }

    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check_prime(&mut self, f: &FlatDiagram) {
        self.prime_checked += 1;
        let code = f.code();
        let (_, sc) = planar::height(f);
        let report = match gamma::classify(f, &sc) {
            Ok(r) => r,
            Err(e) => {
                self.failures.push(format!("classify: {code}: {e}"));
                return;
            }
        };
        // The counting identity and the two-arc boundary property are
        // statements about non-trivial diagrams: both count endpoints of
        // outer edges at crossings, which the embedded arc does not have.
        let nontrivial = f.crossings() > 0;
        if nontrivial && !gamma::check_counting_identity(&report) {
            self.failures.push(format!("identity: {code}"));
        }
        if !gamma::check_no_type34(&report) {
            self.failures.push(format!("type34: {code}"));
        }
        if !gamma::check_shared_edge_property(f, &report) {
            self.failures.push(format!("shared-edge: {code}"));
        }
        if nontrivial && !gamma::check_region_boundary_meets(f, &report) {
            self.failures.push(format!("region-boundary: {code}"));
        }
        let audit = gamma::audit(f, &report);
        if audit.rho_failures > 0 {
            self.failures.push(format!("distance: {code}"));
        }
        if audit.chain_interior_failures > 0 || audit.chain_outer_failures > 0 {
            self.failures.push(format!("chain: {code}"));
        }
        if audit.pocket_failures > 0 {
            self.failures.push(format!("pocket: {code}"));
        }
        let mut witness = |key: &str, applicable: bool| {
            if applicable {
                match self.witnesses.get(key) {
                    Some(cur) if cur.as_str() <= code.as_str() => {}
                    _ => {
                        self.witnesses.insert(key.to_string(), code.clone());
                    }
                }
            }
        };
        witness("two-sided-exceptional", audit.two_sided_instances > 0);
        witness("one-sided-exceptional", audit.one_sided_instances > 0);
        witness("chain-interior", audit.chain_interior_instances > 0);
        witness("chain-outer", audit.chain_outer_instances > 0);
        witness("pocket", audit.pocket_instances > 0);
        self.audit = self.audit.merge(audit);

        let bound = gamma::exists_minimal_shortcut_with_bound(f, SHORTCUT_CAP);
        if !bound.satisfied {
            self.failures.push(format!("existence: {code}"));
        } else {
            if bound.c0_ge_q_minus_2 {
                self.c0_q_holds += 1;
            } else {
                self.c0_q_fails += 1;
            }
            if bound.q_ge_c2 {
                self.q_c2_holds += 1;
            } else {
                self.q_c2_fails += 1;
            }
        }
    }

    fn check_nonprime(&mut self, f: &FlatDiagram) {
        self.nonprime_checked += 1;
        let code = f.code();
        let (h, _) = planar::height(f);
        for w in primality::one_point_circles(f) {
            if !w.disqualifies() {
                continue;
            }
            match primality::split_one_point_circle(f, &w) {
                Ok((f1, f2)) => {
                    let cr_ok =
                        f1.crossings() + f2.crossings() == f.crossings();
                    let h_ok = planar::height(&f1).0 + planar::height(&f2).0 == h;
                    if !cr_ok || !h_ok {
                        self.failures.push(format!("split-additivity: {code}"));
                    }
                }
                Err(e) => self.failures.push(format!("split: {code}: {e}")),
            }
        }
        for w in primality::two_point_circles(f) {
            if !w.disqualifies() {
                continue;
            }
            match primality::contract_two_point_circle(f, &w) {
                Ok(g) => {
                    if planar::height(&g).0 != h {
                        self.failures.push(format!("contract-height: {code}"));
                    }
                    if g.crossings() >= f.crossings() {
                        self.failures.push(format!("contract-count: {code}"));
                    }
                }
                Err(e) => self.failures.push(format!("contract: {code}: {e}")),
            }
        }
        let (pieces, trace) = primality::prime_decompose(f);
        let total_h: u32 = pieces.iter().map(|p| planar::height(p).0).sum();
        if total_h != h {
            self.failures.push(format!("decompose-height: {code}"));
        }
        let total_cr: usize = pieces.iter().map(|p| p.crossings()).sum();
        if total_cr > f.crossings() || pieces.iter().any(|p| !primality::is_prime(p).0) {
            self.failures.push(format!("decompose-pieces: {code}"));
        }
        if trace.len() > f.crossings() + pieces.len() {
            self.failures.push(format!("decompose-steps: {code}"));
        }
    }
}

const SHORTCUT_CAP: usize = 100_000;

fn machinery_for(n: u32, shard: Shard, sequential: bool) -> MachineryReport {
    let work = move |labels: Vec<u32>| {
        let mut report = MachineryReport { n_max: n, ..MachineryReport::default() };
        for d in signed_variants(&labels, n, shard) {
            if primality::is_prime(&d).0 {
                report.check_prime(&d);
            } else {
                report.check_nonprime(&d);
            }
        }
        report
    };
    let items = pairings(n);
    let init = move || MachineryReport { n_max: n, ..MachineryReport::default() };
    let mut report = if sequential {
        exec::fold_items_seq(items, init, work, MachineryReport::merge)
    } else {
        exec::fold_items(items, init, work, MachineryReport::merge)
    };
    report.failures.sort();
    report
}

/// Run every shortcut-relative check on all prime diagrams with at most
/// `n_max` crossings, and the decomposition equalities on the rest.
pub fn verify_prime_machinery_campaign(n_max: u32) -> MachineryReport {
    verify_prime_machinery_campaign_sharded(n_max, Shard::full())
}

pub fn verify_prime_machinery_campaign_sharded(n_max: u32, shard: Shard) -> MachineryReport {
    (0..=n_max)
        .map(|n| machinery_for(n, shard, false))
        .fold(MachineryReport { n_max, ..MachineryReport::default() }, MachineryReport::merge)
}

pub fn verify_prime_machinery_campaign_sequential(n_max: u32) -> MachineryReport {
    (0..=n_max)
        .map(|n| machinery_for(n, Shard::full(), true))
        .fold(MachineryReport { n_max, ..MachineryReport::default() }, MachineryReport::merge)
}

/// The coil family attaining `cr = 2h`: a straight run through `2k`
/// crossings followed by `k` coil turns around the end, each turn crossing
/// the run once on each side.
///
/// Traversal: the straight pass meets the coil walls at labels
/// `1, 2, .., 2k`; the coil pass then winds inward, hitting
/// `1, 2k, 2, 2k-1, .., k, k+1`. The crossings on the far side of the run
/// (labels `1..=k`) have sign `-`, the near side `+`; the mirror signing is
/// kept as a fallback. For `k = 1` this is the clasp. The diagram has `2k`
/// crossings and height exactly `k`.
pub fn spiral(k: u32) -> FlatDiagram {
    assert!(k >= 1, "spiral needs k >= 1");
    let n = 2 * k;
    let mut labels: Vec<u32> = (1..=n).collect();
    for i in 1..=k {
        labels.push(i);
        labels.push(n + 1 - i);
    }
    let signs: Vec<Sign> =
        (1..=n).map(|l| if l <= k { Sign::Minus } else { Sign::Plus }).collect();
    let mirror: Vec<Sign> = signs.iter().map(|s| s.flipped()).collect();
    FlatDiagram::new(labels.clone(), signs)
        .or_else(|_| FlatDiagram::new(labels, mirror))
        .expect("the coil signing is spherical")
}
