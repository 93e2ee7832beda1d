//! Brute-force oracles: bottom half-diagrams, multitableaux and small finite
//! fields are enumerated explicitly so that every closed form can be checked
//! against an independent count.
//!
//! Half-diagrams are generated point by point in canonical order (blocks are
//! created in order of their minimum element), so each diagram appears
//! exactly once. Planar families keep a stack of open blocks: joining a block
//! closes everything above it, and those closed blocks must not be
//! through-strands.

use std::collections::HashSet;

use num_traits::{One, Zero};

use crate::bigmath::{factorial, ExactInt};
use crate::error::{GrowthError, Result};
use crate::families::DiagramFamily;
use crate::guards::Guards;

/// One bottom half-diagram: a set partition of the bottom points with some
/// blocks marked as through-strands.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BottomDiagram {
    pub family: DiagramFamily,
    pub points: usize,
    pub blocks: Vec<Vec<usize>>,
    pub through: Vec<bool>,
    pub planar: bool,
}

impl BottomDiagram {
    pub fn through_count(&self) -> usize {
        self.through.iter().filter(|t| **t).count()
    }

    /// Checks the structural invariants: blocks partition the points, planar
    /// diagrams have no crossing and no enclosed through-strand.
    pub fn is_valid(&self) -> bool {
        let mut seen = vec![false; self.points];
        for b in &self.blocks {
            if b.is_empty() {
                return false;
            }
            for &p in b {
                if p >= self.points || seen[p] {
                    return false;
                }
                seen[p] = true;
            }
        }
        if !seen.iter().all(|s| *s) || self.through.len() != self.blocks.len() {
            return false;
        }
        if !self.planar {
            return true;
        }
        let block_of = {
            let mut v = vec![0; self.points];
            for (i, b) in self.blocks.iter().enumerate() {
                for &p in b {
                    v[p] = i;
                }
            }
            v
        };
        for (i, b) in self.blocks.iter().enumerate() {
            let (lo, hi) = (b[0], *b.last().expect("nonempty"));
            for p in lo + 1..hi {
                let other = block_of[p];
                if other == i {
                    continue;
                }
                // nested blocks must lie entirely inside and not go up
                if self.through[other] {
                    return false;
                }
                let ob = &self.blocks[other];
                if ob[0] < lo || *ob.last().expect("nonempty") > hi {
                    return false;
                }
            }
        }
        true
    }
}

/// Which blocks a family allows in its bottom half-diagrams.
#[derive(Debug, Clone, Copy)]
struct BlockRules {
    planar: bool,
    through_max: usize,
    free_min: usize,
    free_max: usize,
    /// First half of the points point up, second half down; free blocks are
    /// up/down pairs.
    up_down: bool,
}

fn rules_for(family: DiagramFamily) -> Result<BlockRules> {
    let r = |planar, through_max, free_min, free_max| BlockRules {
        planar,
        through_max,
        free_min,
        free_max,
        up_down: false,
    };
    Ok(match family {
        DiagramFamily::Cob { .. } | DiagramFamily::Partition => r(false, usize::MAX, 1, usize::MAX),
        DiagramFamily::PlanarPartition => r(true, usize::MAX, 1, usize::MAX),
        DiagramFamily::TemperleyLieb => r(true, 1, 2, 2),
        DiagramFamily::Motzkin => r(true, 1, 1, 2),
        DiagramFamily::PlanarRook => r(true, 1, 1, 1),
        DiagramFamily::Brauer => r(false, 1, 2, 2),
        DiagramFamily::RookBrauer => r(false, 1, 1, 2),
        DiagramFamily::Rook => r(false, 1, 1, 1),
        DiagramFamily::Symmetric | DiagramFamily::OrientedUp => r(false, 1, 1, 0),
        DiagramFamily::OrientedUpDown => BlockRules {
            up_down: true,
            ..r(false, 1, 2, 2)
        },
        DiagramFamily::GlFq { .. } => {
            return Err(GrowthError::UnsupportedFamily(family.to_string()))
        }
    })
}

struct Walker<'a, F: FnMut(&[Vec<usize>], &[bool])> {
    rules: BlockRules,
    points: usize,
    half: usize,
    blocks: Vec<Vec<usize>>,
    through: Vec<bool>,
    open: Vec<bool>,
    stack: Vec<usize>,
    visit: &'a mut F,
}

impl<F: FnMut(&[Vec<usize>], &[bool])> Walker<'_, F> {
    fn complete(&self, b: usize) -> bool {
        self.through[b] || self.blocks[b].len() >= self.rules.free_min
    }

    fn go(&mut self, p: usize) {
        if p == self.points {
            if (0..self.blocks.len()).all(|b| self.complete(b)) {
                (self.visit)(&self.blocks, &self.through);
            }
            return;
        }
        // start a new block, free or through
        for through in [false, true] {
            if !through && self.rules.free_max == 0 {
                continue;
            }
            self.blocks.push(vec![p]);
            self.through.push(through);
            self.open.push(true);
            self.stack.push(self.blocks.len() - 1);
            self.go(p + 1);
            self.stack.pop();
            self.open.pop();
            self.through.pop();
            self.blocks.pop();
        }
        // join an existing block
        for b in 0..self.blocks.len() {
            if !self.open[b] {
                continue;
            }
            let cap = if self.through[b] {
                self.rules.through_max
            } else {
                self.rules.free_max
            };
            if self.blocks[b].len() >= cap {
                continue;
            }
            if self.rules.up_down && !(self.blocks[b][0] < self.half && p >= self.half) {
                continue;
            }
            let mut closed = Vec::new();
            if self.rules.planar {
                let pos = self.stack.iter().position(|&s| s == b).expect("open block on stack");
                let above = &self.stack[pos + 1..];
                if above.iter().any(|&s| self.through[s] || !self.complete(s)) {
                    continue;
                }
                closed = self.stack.split_off(pos + 1);
                for &s in &closed {
                    self.open[s] = false;
                }
            }
            self.blocks[b].push(p);
            self.go(p + 1);
            self.blocks[b].pop();
            for &s in &closed {
                self.open[s] = true;
            }
            self.stack.extend(closed);
        }
    }
}

fn bottom_points(family: DiagramFamily, n: usize) -> usize {
    if family == DiagramFamily::OrientedUpDown {
        2 * n
    } else {
        n
    }
}

fn check_guard(family: DiagramFamily, n: usize, guards: &Guards) -> Result<()> {
    let limit = guards.oracle_limit(family);
    if n > limit {
        return Err(GrowthError::GuardExceeded {
            what: "enumeration oracle",
            n,
            limit,
        });
    }
    Ok(())
}

fn walk(
    family: DiagramFamily,
    n: usize,
    visit: &mut impl FnMut(&[Vec<usize>], &[bool]),
) -> Result<()> {
    let rules = rules_for(family)?;
    let mut w = Walker {
        rules,
        points: bottom_points(family, n),
        half: n,
        blocks: Vec::new(),
        through: Vec::new(),
        open: Vec::new(),
        stack: Vec::new(),
        visit,
    };
    w.go(0);
    Ok(())
}

/// Apex of a half-diagram: the number of through-strands, or for the
/// up/down oriented family the number of upward through-strands.
fn apex(family: DiagramFamily, n: usize, blocks: &[Vec<usize>], through: &[bool]) -> usize {
    let it = blocks.iter().zip(through).filter(|(_, t)| **t);
    if family == DiagramFamily::OrientedUpDown {
        it.filter(|(b, _)| b[0] < n).count()
    } else {
        it.count()
    }
}

/// All bottom half-diagrams of `family` on `n` strands.
pub fn bottom_diagrams(family: DiagramFamily, n: usize) -> Result<Vec<BottomDiagram>> {
    check_guard(family, n, &Guards::default())?;
    let points = bottom_points(family, n);
    let mut out = Vec::new();
    walk(family, n, &mut |blocks, through| {
        out.push(BottomDiagram {
            family,
            points,
            blocks: blocks.to_vec(),
            through: through.to_vec(),
            planar: family.is_planar(),
        })
    })?;
    Ok(out)
}

/// Bottom half-diagram counts indexed by apex `0..=n`.
pub fn bottom_counts_with(family: DiagramFamily, n: usize, guards: &Guards) -> Result<Vec<u64>> {
    check_guard(family, n, guards)?;
    let mut counts = vec![0u64; n + 1];
    walk(family, n, &mut |blocks, through| {
        counts[apex(family, n, blocks, through)] += 1;
    })?;
    Ok(counts)
}

/// Number of bottom half-diagrams with apex `k`.
pub fn count_bottom_diagrams(family: DiagramFamily, n: usize, k: usize) -> Result<ExactInt> {
    if k > n {
        return Ok(ExactInt::zero());
    }
    Ok(bottom_counts_with(family, n, &Guards::default())?[k].into())
}

/// Pairs (set partition of an `n`-set, `m` of its blocks marked).
pub fn enumerate_merge_diagrams(n: usize, m: usize) -> Result<ExactInt> {
    count_bottom_diagrams(DiagramFamily::Partition, n, m)
}

/// A `k`-tuple of partitions, each weakly decreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multipartition(pub Vec<Vec<usize>>);

impl Multipartition {
    pub fn size(&self) -> usize {
        self.0.iter().flatten().sum()
    }

    pub fn is_valid(&self) -> bool {
        self.0
            .iter()
            .all(|p| p.windows(2).all(|w| w[0] >= w[1]) && p.iter().all(|&r| r > 0))
    }
}

/// Integer partitions of `m` in decreasing lexicographic order.
pub fn partitions(m: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, m, &mut Vec::new(), &mut out);
    out
}

/// All `k`-multipartitions of `m`.
pub fn multipartitions(m: usize, k: usize) -> Vec<Multipartition> {
    if k == 0 {
        return if m == 0 { vec![Multipartition(Vec::new())] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=m {
        for head in partitions(first) {
            for mut tail in multipartitions(m - first, k - 1) {
                tail.0.insert(0, head.clone());
                out.push(tail);
            }
        }
    }
    out
}

/// Standard tableaux of a single shape by the hook-length formula.
pub fn hook_length_count(shape: &[usize]) -> ExactInt {
    let m: usize = shape.iter().sum();
    let mut hooks = ExactInt::one();
    for (r, &len) in shape.iter().enumerate() {
        for c in 0..len {
            let arm = len - c - 1;
            let leg = shape[r + 1..].iter().filter(|&&l| l > c).count();
            hooks *= arm + leg + 1;
        }
    }
    factorial(m) / hooks
}

/// Standard tableaux of a single shape by placing `1, 2, ...` into every
/// admissible cell in turn.
pub fn count_standard_fillings(shape: &[usize]) -> u64 {
    fn go(shape: &[usize], filled: &mut Vec<usize>) -> u64 {
        if filled.iter().zip(shape).all(|(f, s)| f == s) {
            return 1;
        }
        let mut total = 0;
        for r in 0..shape.len() {
            let ok_row = filled[r] < shape[r];
            let ok_above = r == 0 || filled[r - 1] > filled[r];
            if ok_row && ok_above {
                filled[r] += 1;
                total += go(shape, filled);
                filled[r] -= 1;
            }
        }
        total
    }
    go(shape, &mut vec![0; shape.len()])
}

/// Standard `k`-multitableaux with `m` cells: for every multipartition, the
/// ways to split `1..=m` among components times the hook-length counts.
/// Multipartitions are grouped by component sizes.
pub fn count_multitableaux(m: usize, k: u32) -> Result<ExactInt> {
    count_multitableaux_with(m, k, &Guards::default())
}

pub fn count_multitableaux_with(m: usize, k: u32, guards: &Guards) -> Result<ExactInt> {
    let (max_m, max_k) = guards.multitableaux_limits();
    if m > max_m {
        return Err(GrowthError::GuardExceeded {
            what: "multitableaux cells",
            n: m,
            limit: max_m,
        });
    }
    if k > max_k || k == 0 {
        return Err(GrowthError::InvalidParameter(format!(
            "multitableaux need 1 <= k <= {max_k}, got {k}"
        )));
    }
    // per-size sum over shapes of f^lambda
    let per_size: Vec<ExactInt> = (0..=m)
        .map(|s| partitions(s).iter().map(|p| hook_length_count(p)).sum())
        .collect();
    // The multinomial m!/(s_1!...s_k!) is built one component at a time as
    // C(rest, s).
    fn go(rest: usize, colors: u32, per_size: &[ExactInt]) -> ExactInt {
        if colors == 1 {
            return per_size[rest].clone();
        }
        (0..=rest)
            .map(|s| {
                crate::bigmath::binomial(rest, s as i64)
                    * &per_size[s]
                    * go(rest - s, colors - 1, per_size)
            })
            .sum()
    }
    Ok(go(m, k, &per_size))
}

/// Sum of dimensions of simple modules of the sandwiched algebra at apex `k`.
fn sandwich_weight(family: DiagramFamily, k: usize, guards: &Guards) -> Result<ExactInt> {
    Ok(match family {
        f if f.is_planar() => ExactInt::one(),
        DiagramFamily::Cob { k: colors } => count_multitableaux_with(k, colors, guards)?,
        DiagramFamily::OrientedUpDown => {
            let s = count_multitableaux_with(k, 1, guards)?;
            &s * &s
        }
        _ => count_multitableaux_with(k, 1, guards)?,
    })
}

/// `b_n` as `sum_k #bottom(k) * sandwich weight(k)`, by enumeration.
pub fn oracle_bn(family: DiagramFamily, n: usize) -> Result<ExactInt> {
    oracle_bn_with(family, n, &Guards::default())
}

pub fn oracle_bn_with(family: DiagramFamily, n: usize, guards: &Guards) -> Result<ExactInt> {
    family.validate()?;
    if let DiagramFamily::GlFq { q } = family {
        return finite_field::oracle_gl_bn(q, n, guards);
    }
    let counts = bottom_counts_with(family, n, guards)?;
    let mut total = ExactInt::zero();
    for (k, c) in counts.iter().enumerate() {
        if *c > 0 {
            total += sandwich_weight(family, k, guards)? * *c;
        }
    }
    Ok(total)
}

/// Small prime fields `F_p`, enumerated directly.
pub mod finite_field {
    use super::*;

    pub fn is_prime(p: u64) -> bool {
        p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
    }

    fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
        let cols = rows.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..cols {
            let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][c].is_multiple_of(p)) else {
                continue;
            };
            rows.swap(rank, piv);
            let inv = mod_pow(rows[rank][c], p - 2, p);
            for r in 0..rows.len() {
                if r != rank && rows[r][c] != 0 {
                    let f = rows[r][c] * inv % p;
                    for cc in c..cols {
                        rows[r][cc] = (rows[r][cc] + p * p - f * rows[rank][cc] % p) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
        let mut acc = 1;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc
    }

    fn check_prime(p: u64) -> Result<()> {
        if !is_prime(p) {
            return Err(GrowthError::InvalidParameter(format!(
                "finite-field enumeration needs a prime, got {p}"
            )));
        }
        Ok(())
    }

    /// Invertible symmetric `k x k` matrices over `F_p`, by listing them all.
    pub fn count_symmetric_invertible(p: u64, k: usize) -> Result<u64> {
        check_prime(p)?;
        let slots = k * (k + 1) / 2;
        let total = p.checked_pow(slots as u32).ok_or(GrowthError::GuardExceeded {
            what: "symmetric matrix enumeration",
            n: k,
            limit: 0,
        })?;
        let mut count = 0;
        let mut entries = vec![0u64; slots];
        for idx in 0..total {
            let mut v = idx;
            for e in entries.iter_mut() {
                *e = v % p;
                v /= p;
            }
            let mut m = vec![vec![0u64; k]; k];
            let mut s = 0;
            for i in 0..k {
                for j in i..k {
                    m[i][j] = entries[s];
                    m[j][i] = entries[s];
                    s += 1;
                }
            }
            if rank_mod_p(m, p) == k {
                count += 1;
            }
        }
        Ok(count)
    }

    fn vec_add_scaled(a: u32, b: u32, c: u64, p: u64, dim: usize) -> u32 {
        let (mut a, mut b) = (a as u64, b as u64);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..dim {
            let digit = (a % p + c * (b % p)) % p;
            out += digit * place;
            place *= p;
            a /= p;
            b /= p;
        }
        out as u32
    }

    /// Numbers of subspaces of `F_p^dim` of each dimension `0..=dim`, found by
    /// growing every subspace by one vector at a time and deduplicating.
    pub fn subspace_counts(p: u64, dim: usize) -> Result<Vec<u64>> {
        check_prime(p)?;
        let size = p.pow(dim as u32) as u32;
        let mut layer: HashSet<Vec<u32>> = HashSet::from([vec![0u32]]);
        let mut counts = vec![1u64];
        for _ in 0..dim {
            let mut next: HashSet<Vec<u32>> = HashSet::new();
            for space in &layer {
                let members: HashSet<u32> = space.iter().copied().collect();
                for v in 0..size {
                    if members.contains(&v) {
                        continue;
                    }
                    let mut span: Vec<u32> = Vec::with_capacity(space.len() * p as usize);
                    for &s in space {
                        for c in 0..p {
                            span.push(vec_add_scaled(s, v, c, p, dim));
                        }
                    }
                    span.sort_unstable();
                    next.insert(span);
                }
            }
            counts.push(next.len() as u64);
            layer = next;
        }
        Ok(counts)
    }

    /// `b_n = sum_k (sum_{k<=l<=n} #Gr_l(F^n) #Gr_k(F^l)) * #SymGL_k(F)`,
    /// every factor counted by enumeration over `F_p`, `p` an odd prime.
    pub fn oracle_gl_bn(p: u64, n: usize, guards: &Guards) -> Result<ExactInt> {
        check_prime(p)?;
        if p == 2 {
            return Err(GrowthError::InvalidParameter(
                "character-degree count needs odd q".into(),
            ));
        }
        let work = p.checked_pow((n * (n + 1) / 2) as u32);
        let cap = guards.max_n.unwrap_or(usize::MAX);
        if work.is_none_or(|w| w > guards.field_work) || n > cap {
            return Err(GrowthError::GuardExceeded {
                what: "finite-field oracle",
                n,
                limit: (1..)
                    .take_while(|m| {
                        p.checked_pow((m * (m + 1) / 2) as u32)
                            .is_some_and(|w| w <= guards.field_work)
                    })
                    .last()
                    .unwrap_or(0)
                    .min(cap),
            });
        }
        let grass: Vec<Vec<u64>> = (0..=n)
            .map(|d| subspace_counts(p, d))
            .collect::<Result<_>>()?;
        let mut total = ExactInt::zero();
        for k in 0..=n {
            let bottom: u64 = (k..=n).map(|l| grass[n][l] * grass[l][k]).sum();
            total += ExactInt::from(bottom) * count_symmetric_invertible(p, k)?;
        }
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigmath::{binomial, involutions_cd, perfect_matchings};
    use crate::families::bn;

    fn int(v: u64) -> ExactInt {
        ExactInt::from(v)
    }

    #[test]
    fn named_bottom_counts() {
        assert_eq!(count_bottom_diagrams(DiagramFamily::Brauer, 4, 2).unwrap(), int(6));
        assert_eq!(
            count_bottom_diagrams(DiagramFamily::TemperleyLieb, 3, 1).unwrap(),
            int(2)
        );
        for f in DiagramFamily::catalogue(&[1, 2], &[]) {
            for n in 0..=5 {
                assert_eq!(count_bottom_diagrams(f, n, n).unwrap(), int(1), "{f} {n}");
            }
        }
    }

    #[test]
    fn bottom_totals() {
        for n in 0..=9 {
            let brauer: u64 = bottom_counts_with(DiagramFamily::Brauer, n, &Guards::default())
                .unwrap()
                .iter()
                .sum();
            assert_eq!(int(brauer), involutions_cd(n));
            let rook: u64 = bottom_counts_with(DiagramFamily::PlanarRook, n, &Guards::default())
                .unwrap()
                .iter()
                .sum();
            assert_eq!(rook, 1 << n);
            for k in 0..=n {
                assert_eq!(
                    count_bottom_diagrams(DiagramFamily::Brauer, n, k).unwrap(),
                    binomial(n, k as i64) * perfect_matchings(n - k)
                );
            }
        }
    }

    #[test]
    fn enumerated_diagrams_are_valid_and_distinct() {
        for f in DiagramFamily::catalogue(&[1], &[]) {
            let n = if f == DiagramFamily::OrientedUpDown { 3 } else { 5 };
            let all = bottom_diagrams(f, n).unwrap();
            let distinct: HashSet<_> = all.iter().cloned().collect();
            assert_eq!(distinct.len(), all.len(), "{f}");
            assert!(all.iter().all(BottomDiagram::is_valid), "{f}");
        }
    }

    #[test]
    fn planarity_check_rejects_bad_diagrams() {
        let crossing = BottomDiagram {
            family: DiagramFamily::TemperleyLieb,
            points: 4,
            blocks: vec![vec![0, 2], vec![1, 3]],
            through: vec![false, false],
            planar: true,
        };
        assert!(!crossing.is_valid());
        let enclosed = BottomDiagram {
            blocks: vec![vec![0, 2], vec![1]],
            through: vec![false, true],
            points: 3,
            ..crossing.clone()
        };
        assert!(!enclosed.is_valid());
        let fine = BottomDiagram {
            blocks: vec![vec![0, 1], vec![2]],
            through: vec![false, true],
            points: 3,
            ..crossing
        };
        assert!(fine.is_valid());
    }

    #[test]
    fn merge_diagrams() {
        assert_eq!(enumerate_merge_diagrams(2, 1).unwrap(), int(3));
        assert_eq!(enumerate_merge_diagrams(3, 0).unwrap(), int(5));
        for n in 0..=8 {
            assert_eq!(enumerate_merge_diagrams(n, n).unwrap(), int(1));
            for m in 0..=n {
                assert_eq!(
                    enumerate_merge_diagrams(n, m).unwrap(),
                    crate::families::merge_count(n, m)
                );
            }
        }
    }

    #[test]
    fn multitableaux() {
        assert_eq!(count_multitableaux(0, 3).unwrap(), int(1));
        assert_eq!(count_multitableaux(2, 2).unwrap(), int(6));
        assert_eq!(count_multitableaux(3, 1).unwrap(), int(4));
        for k in 1..=6 {
            for m in 0..=12 {
                assert_eq!(
                    count_multitableaux(m, k).unwrap(),
                    crate::families::stab_count(m, k).unwrap(),
                    "m={m} k={k}"
                );
            }
        }
        assert!(count_multitableaux(21, 1).is_err());
        assert!(count_multitableaux(3, 7).is_err());
        assert!(count_multitableaux(3, 0).is_err());
    }

    #[test]
    fn multitableaux_by_explicit_multipartitions() {
        for k in 1..=3usize {
            for m in 0..=6 {
                let mps = multipartitions(m, k);
                assert!(mps.iter().all(|mp| mp.is_valid() && mp.size() == m));
                let total: ExactInt = mps
                    .iter()
                    .map(|mp| {
                        let mut ways = factorial(m);
                        for p in &mp.0 {
                            let s: usize = p.iter().sum();
                            ways = ways / factorial(s) * hook_length_count(p);
                        }
                        ways
                    })
                    .sum();
                assert_eq!(total, count_multitableaux(m, k as u32).unwrap());
            }
        }
    }

    #[test]
    fn hook_lengths_match_fillings() {
        for m in 0..=8 {
            for shape in partitions(m) {
                assert_eq!(
                    hook_length_count(&shape),
                    int(count_standard_fillings(&shape)),
                    "{shape:?}"
                );
            }
        }
    }

    #[test]
    fn oracle_small_values() {
        assert_eq!(oracle_bn(DiagramFamily::Symmetric, 4).unwrap(), int(10));
        for f in DiagramFamily::catalogue(&[1, 2, 3], &[3]) {
            assert_eq!(oracle_bn(f, 0).unwrap(), int(1), "{f}");
        }
        for n in 0..=5 {
            assert_eq!(
                oracle_bn(DiagramFamily::Partition, n).unwrap(),
                bn(DiagramFamily::Cob { k: 1 }, n).unwrap()
            );
        }
    }

    #[test]
    fn oracle_guards() {
        let err = oracle_bn(DiagramFamily::Brauer, 13).unwrap_err();
        assert!(matches!(err, GrowthError::GuardExceeded { .. }));
        assert!(oracle_bn(DiagramFamily::TemperleyLieb, 17).is_err());
        let low = Guards {
            max_n: Some(3),
            ..Guards::default()
        };
        assert!(oracle_bn_with(DiagramFamily::Brauer, 4, &low).is_err());
        assert!(oracle_bn_with(DiagramFamily::GlFq { q: 3 }, 4, &low).is_err());
        assert!(oracle_bn(DiagramFamily::GlFq { q: 3 }, 6).is_err());
        assert!(oracle_bn(DiagramFamily::GlFq { q: 9 }, 2).is_err());
        assert!(oracle_bn(DiagramFamily::GlFq { q: 2 }, 2).is_err());
    }

    #[test]
    fn finite_field_counts() {
        use finite_field::*;
        assert_eq!(count_symmetric_invertible(3, 0).unwrap(), 1);
        assert_eq!(count_symmetric_invertible(3, 1).unwrap(), 2);
        assert_eq!(count_symmetric_invertible(3, 2).unwrap(), 18);
        // F_3^2 has 4 lines
        assert_eq!(subspace_counts(3, 2).unwrap(), vec![1, 4, 1]);
        assert_eq!(subspace_counts(2, 3).unwrap(), vec![1, 7, 7, 1]);
        assert!(!is_prime(9) && is_prime(7));
    }

    #[test]
    fn small_glfq_oracle() {
        for n in 0..=3 {
            assert_eq!(
                oracle_bn(DiagramFamily::GlFq { q: 3 }, n).unwrap(),
                bn(DiagramFamily::GlFq { q: 3 }, n).unwrap()
            );
        }
    }
}
