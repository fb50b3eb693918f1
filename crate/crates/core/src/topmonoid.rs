//! Finite carriers bearing both a topology and an associative operation.
//!
//! Continuity facts are computed through minimal neighborhoods: a shift
//! `l_a` is continuous iff `a·min(x) ⊆ min(ax)`, it is open iff the image
//! of every minimal open is open (images distribute over unions), and the
//! operation is jointly continuous iff `min(a)·min(b) ⊆ min(ab)`, which is
//! the product-space criterion since the minimal open of a pair is the
//! rectangle of factor minimal opens. The definitional product-space and
//! lattice-scan routes are asserted to agree in the test suites.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finspace::{FiniteSpace, SpaceMap};
use crate::partition::Partition;
use crate::pointset::{PointSet, EMPTY};
use crate::semigroup::{CayleyTable, Congruence};

/// Continuity and algebraic flags of an assembled monoid-with-topology.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Profile {
    /// Every left and right shift is continuous.
    pub semitopological: bool,
    /// The operation is jointly continuous from the product space.
    pub topological: bool,
    pub left_open_shifts: bool,
    pub right_open_shifts: bool,
    /// Both one-sided families of shifts are open.
    pub open_shifts: bool,
    pub cancellative: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopMonoid {
    space: FiniteSpace,
    algebra: CayleyTable,
    profile: Profile,
}

impl TopMonoid {
    /// Joins a space and a table over the identical carrier and computes
    /// the profile.
    pub fn assemble(space: FiniteSpace, algebra: CayleyTable) -> Result<Self> {
        if space.points() != algebra.points() {
            return Err(Error::CarrierMismatch(
                "space and table carriers differ".into(),
            ));
        }
        let n = space.n();
        let mul_image = |a: PointSet, b: PointSet| {
            let mut out = EMPTY;
            for x in a.iter() {
                for y in b.iter() {
                    out.insert(algebra.mul(x, y));
                }
            }
            out
        };
        let mut semitopological = true;
        let mut left_open = true;
        let mut right_open = true;
        for a in 0..n {
            for x in 0..n {
                let am = mul_image(PointSet::singleton(a), space.min_open(x));
                let ma = mul_image(space.min_open(x), PointSet::singleton(a));
                if !am.is_subset(space.min_open(algebra.mul(a, x)))
                    || !ma.is_subset(space.min_open(algebra.mul(x, a)))
                {
                    semitopological = false;
                }
                if !space.is_open(am) {
                    left_open = false;
                }
                if !space.is_open(ma) {
                    right_open = false;
                }
            }
        }
        let mut topological = true;
        'joint: for a in 0..n {
            for b in 0..n {
                let image = mul_image(space.min_open(a), space.min_open(b));
                if !image.is_subset(space.min_open(algebra.mul(a, b))) {
                    topological = false;
                    break 'joint;
                }
            }
        }
        let profile = Profile {
            semitopological,
            topological,
            left_open_shifts: left_open,
            right_open_shifts: right_open,
            open_shifts: left_open && right_open,
            cancellative: algebra.is_cancellative(),
        };
        Ok(TopMonoid {
            space,
            algebra,
            profile,
        })
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn algebra(&self) -> &CayleyTable {
        &self.algebra
    }

    pub fn profile(&self) -> Profile {
        self.profile
    }

    pub fn n(&self) -> usize {
        self.space.n()
    }

    /// The componentwise product on the product space.
    pub fn product(&self, other: &TopMonoid) -> Result<TopMonoid> {
        let space = self.space.product(&other.space)?;
        let algebra = self.algebra.product(&other.algebra)?;
        Self::assemble(space, algebra)
    }

    fn pair_closure(&self, rows: &[PointSet]) -> Vec<PointSet> {
        self.space.pair_closure(rows)
    }

    /// Whether the partition's pair set is closed in the square.
    pub fn congruence_is_closed(&self, partition: &Partition) -> Result<bool> {
        if partition.carrier() != self.space.points() {
            return Err(Error::CarrierMismatch(
                "partition carrier differs from the monoid".into(),
            ));
        }
        let rows = partition.pair_rows();
        Ok(self.pair_closure(&rows) == rows)
    }

    /// Smallest closed congruence containing the seed pairs, by alternating
    /// congruence closure with topological closure in the square (followed
    /// by equivalence re-closure) until a fixpoint. Each round strictly
    /// grows the pair set, so at most `n²` rounds run.
    pub fn closed_congruence_closure(&self, seed: &[(usize, usize)]) -> Result<Congruence> {
        let mut pairs: Vec<(usize, usize)> = seed.to_vec();
        loop {
            let cong = self.algebra.congruence_closure(&pairs)?;
            let rows = cong.partition().pair_rows();
            let closed = self.pair_closure(&rows);
            if closed == rows {
                return Ok(cong);
            }
            // The closure of a reflexive symmetric relation stays reflexive
            // and symmetric; re-close transitively via pair seeds.
            pairs.clear();
            for (x, row) in closed.iter().enumerate() {
                for y in row.iter() {
                    pairs.push((x, y));
                }
            }
        }
    }

    /// Reference implementation for tests: filters every partition down to
    /// the closed congruences containing the seed and takes their meet,
    /// asserting the meet stays in the family.
    pub fn least_closed_congruence_by_enumeration(
        &self,
        seed: &[(usize, usize)],
    ) -> Result<Congruence> {
        let candidates: Vec<Partition> = Partition::all(self.space.points())
            .into_iter()
            .filter(|p| {
                self.algebra.is_congruence(p).unwrap()
                    && self.congruence_is_closed(p).unwrap()
                    && seed.iter().all(|&(x, y)| p.same_block(x, y))
            })
            .collect();
        if candidates.is_empty() {
            return Err(Error::InvariantViolated(
                "no closed congruence contains the seed; even the total one failed".into(),
            ));
        }
        let least = candidates
            .iter()
            .skip(1)
            .fold(candidates[0].clone(), |acc, p| acc.meet(p));
        if !candidates.contains(&least) {
            return Err(Error::InvariantViolated(
                "meet of closed congruences is not itself one".into(),
            ));
        }
        Congruence::new(&self.algebra, least)
    }

    /// The quotient monoid of a congruence, with the canonical projection.
    pub fn quotient(&self, congruence: &Congruence) -> Result<(TopMonoid, SpaceMap)> {
        if congruence.table() != &self.algebra {
            return Err(Error::NotACongruence(
                "congruence was validated against a different table".into(),
            ));
        }
        let (qspace, projection) = self.space.quotient(congruence.partition())?;
        let qtable = congruence.quotient_table();
        let quotient = Self::assemble(qspace, qtable)?;
        #[cfg(debug_assertions)]
        {
            let flags = projection.profile();
            debug_assert!(flags.continuous && flags.quotient);
            if self.profile.left_open_shifts || self.profile.right_open_shifts {
                debug_assert!(flags.open, "one-sided open shifts force open projections");
            }
        }
        Ok((quotient, projection))
    }

    /// Searches for a bijection of carriers that is simultaneously a table
    /// isomorphism and a homeomorphism. Candidates are pruned by local
    /// signatures (identity position, idempotency, neighborhood and closure
    /// sizes) and by partial table consistency before the full check runs
    /// at the leaves. Returns the image of each point, or `None`.
    pub fn monoid_iso(&self, other: &TopMonoid) -> Option<Vec<usize>> {
        let n = self.n();
        if n != other.n() {
            return None;
        }
        let sig = |tm: &TopMonoid, x: usize| {
            (
                tm.space.min_open(x).len(),
                tm.space.closure(PointSet::singleton(x)).len(),
                tm.algebra.mul(x, x) == x,
                tm.algebra.identity() == Some(x),
            )
        };
        let ours: Vec<_> = (0..n).map(|x| sig(self, x)).collect();
        let theirs: Vec<_> = (0..n).map(|x| sig(other, x)).collect();
        fn extend(
            a: &TopMonoid,
            b: &TopMonoid,
            ours: &[(usize, usize, bool, bool)],
            theirs: &[(usize, usize, bool, bool)],
            perm: &mut Vec<usize>,
            used: &mut Vec<bool>,
        ) -> bool {
            let x = perm.len();
            let n = a.n();
            if x == n {
                // The partial scan only covers products landing inside the
                // assigned prefix, so the leaf re-verifies the whole table
                // and then checks that the topologies correspond.
                let table_ok = (0..n).all(|p| {
                    (0..n).all(|q| perm[a.algebra.mul(p, q)] == b.algebra.mul(perm[p], perm[q]))
                });
                return table_ok
                    && (0..n).all(|p| {
                        let image =
                            PointSet::from_indices(a.space.min_open(p).iter().map(|u| perm[u]));
                        image == b.space.min_open(perm[p])
                    });
            }
            'candidates: for y in 0..n {
                if used[y] || ours[x] != theirs[y] {
                    continue;
                }
                for p in 0..x {
                    let xp = a.algebra.mul(x, p);
                    let px = a.algebra.mul(p, x);
                    if xp <= x && b.algebra.mul(y, perm[p]) != if xp == x { y } else { perm[xp] } {
                        continue 'candidates;
                    }
                    if px <= x && b.algebra.mul(perm[p], y) != if px == x { y } else { perm[px] } {
                        continue 'candidates;
                    }
                }
                let xx = a.algebra.mul(x, x);
                if xx <= x && b.algebra.mul(y, y) != if xx == x { y } else { perm[xx] } {
                    continue;
                }
                perm.push(y);
                used[y] = true;
                if extend(a, b, ours, theirs, perm, used) {
                    return true;
                }
                perm.pop();
                used[y] = false;
            }
            false
        }
        let mut perm = Vec::with_capacity(n);
        let mut used = vec![false; n];
        if extend(self, other, &ours, &theirs, &mut perm, &mut used) {
            Some(perm)
        } else {
            None
        }
    }

    /// Retopologization by shifted identity neighborhoods: the topology
    /// generated by `{ aU, Ua : a in S }` for `U` the minimal open
    /// neighborhood of the identity, read as a subbase.
    pub fn gamma_retopologize(&self) -> Result<TopMonoid> {
        let e = self.algebra.identity().ok_or(Error::NoIdentity)?;
        let v = self.space.min_open(e);
        let n = self.n();
        let mut subbase = Vec::with_capacity(2 * n);
        for a in 0..n {
            let mut left = EMPTY;
            let mut right = EMPTY;
            for u in v.iter() {
                left.insert(self.algebra.mul(a, u));
                right.insert(self.algebra.mul(u, a));
            }
            subbase.push(left);
            subbase.push(right);
        }
        let space =
            FiniteSpace::generate_from_subbase(self.space.points().to_vec(), &subbase)?;
        Self::assemble(space, self.algebra.clone())
    }
}
