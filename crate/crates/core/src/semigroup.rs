//! Finite semigroups and monoids as Cayley tables, with congruences and
//! congruence quotients.

use crate::error::{Error, Result};
use crate::partition::{Partition, UnionFind};

/// A finite associative operation on named points, with its structural
/// flags computed at construction. Every flag is verified directly, never
/// assumed: `is_group` checks identity and two-sided inverses even though
/// finiteness makes it follow from `is_monoid && is_cancellative`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyTable {
    points: Vec<String>,
    /// Row-major: `table[x * n + y]` is the index of `x·y`.
    table: Vec<usize>,
    identity: Option<usize>,
    is_monoid: bool,
    is_cancellative: bool,
    is_group: bool,
}

impl CayleyTable {
    /// Builds a table from named rows: `rows[x][y]` names `x·y`.
    pub fn make_table(points: Vec<String>, rows: &[Vec<String>]) -> Result<Self> {
        let n = points.len();
        if points.is_empty() {
            return Err(Error::CarrierMismatch("no points declared".into()));
        }
        let mut seen: Vec<&str> = Vec::new();
        for p in &points {
            if seen.contains(&p.as_str()) {
                return Err(Error::DuplicatePoint(p.clone()));
            }
            seen.push(p);
        }
        if rows.len() != n {
            return Err(Error::CarrierMismatch(format!(
                "{} rows for {} points",
                rows.len(),
                n
            )));
        }
        let mut table = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::CarrierMismatch(format!(
                    "row of length {} for {} points",
                    row.len(),
                    n
                )));
            }
            for name in row {
                match points.iter().position(|p| p == name) {
                    Some(i) => table.push(i),
                    None => return Err(Error::ForeignPoint(name.clone())),
                }
            }
        }
        Self::from_indices(points, table)
    }

    /// Index-level constructor with the same validation.
    pub fn from_indices(points: Vec<String>, table: Vec<usize>) -> Result<Self> {
        let n = points.len();
        if table.len() != n * n {
            return Err(Error::CarrierMismatch(format!(
                "{} table entries for {} points",
                table.len(),
                n
            )));
        }
        if table.iter().any(|&v| v >= n) {
            return Err(Error::ForeignPoint("table entry out of range".into()));
        }
        let at = |x: usize, y: usize| table[x * n + y];
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let left = at(at(x, y), z);
                    let right = at(x, at(y, z));
                    if left != right {
                        return Err(Error::AssociativityViolation {
                            x: points[x].clone(),
                            y: points[y].clone(),
                            z: points[z].clone(),
                            left: points[left].clone(),
                            right: points[right].clone(),
                        });
                    }
                }
            }
        }
        let identity =
            (0..n).find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x));
        let is_monoid = identity.is_some();
        let is_cancellative = (0..n).all(|a| {
            let row_injective = {
                let mut seen = 0u64;
                (0..n).all(|x| {
                    let v = at(a, x);
                    let fresh = seen >> v & 1 == 0;
                    seen |= 1 << v;
                    fresh
                })
            };
            let col_injective = {
                let mut seen = 0u64;
                (0..n).all(|x| {
                    let v = at(x, a);
                    let fresh = seen >> v & 1 == 0;
                    seen |= 1 << v;
                    fresh
                })
            };
            row_injective && col_injective
        });
        let is_group = match identity {
            Some(e) => (0..n).all(|x| (0..n).any(|y| at(x, y) == e && at(y, x) == e)),
            None => false,
        };
        Ok(CayleyTable {
            points,
            table,
            identity,
            is_monoid,
            is_cancellative,
            is_group,
        })
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.points.len() + y]
    }

    pub fn identity(&self) -> Option<usize> {
        self.identity
    }

    pub fn is_monoid(&self) -> bool {
        self.is_monoid
    }

    pub fn is_cancellative(&self) -> bool {
        self.is_cancellative
    }

    pub fn is_group(&self) -> bool {
        self.is_group
    }

    /// Row-major index entries, for serialization.
    pub fn entries(&self) -> &[usize] {
        &self.table
    }

    /// The componentwise product table on pair points named `(p,q)`.
    pub fn product(&self, other: &CayleyTable) -> Result<CayleyTable> {
        let n1 = self.n();
        let n2 = other.n();
        let mut points = Vec::with_capacity(n1 * n2);
        for x in 0..n1 {
            for y in 0..n2 {
                points.push(format!("({},{})", self.points[x], other.points[y]));
            }
        }
        let mut table = Vec::with_capacity(n1 * n2 * n1 * n2);
        for x1 in 0..n1 {
            for y1 in 0..n2 {
                for x2 in 0..n1 {
                    for y2 in 0..n2 {
                        table.push(self.mul(x1, x2) * n2 + other.mul(y1, y2));
                    }
                }
            }
        }
        Self::from_indices(points, table)
    }

    /// Whether a partition is compatible with the operation: products of
    /// related pairs stay related.
    pub fn is_congruence(&self, partition: &Partition) -> Result<bool> {
        if partition.carrier() != self.points() {
            return Err(Error::CarrierMismatch(
                "partition carrier differs from the table".into(),
            ));
        }
        let n = self.n();
        for x in 0..n {
            for y in 0..n {
                if !partition.same_block(x, y) {
                    continue;
                }
                for a in 0..n {
                    if !partition.same_block(self.mul(a, x), self.mul(a, y))
                        || !partition.same_block(self.mul(x, a), self.mul(y, a))
                    {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Smallest congruence containing the seed pairs: equivalence closure
    /// by union-find, with a worklist propagating products.
    pub fn congruence_closure(&self, seed: &[(usize, usize)]) -> Result<Congruence> {
        let n = self.n();
        if seed.iter().any(|&(x, y)| x >= n || y >= n) {
            return Err(Error::ForeignPoint("seed pair out of range".into()));
        }
        let mut uf = UnionFind::new(n);
        let mut work: Vec<(usize, usize)> = Vec::new();
        for &(x, y) in seed {
            if uf.unite(x, y) {
                work.push((x, y));
            }
        }
        while let Some((x, y)) = work.pop() {
            for a in 0..n {
                for (p, q) in [
                    (self.mul(a, x), self.mul(a, y)),
                    (self.mul(x, a), self.mul(y, a)),
                ] {
                    if uf.unite(p, q) {
                        work.push((p, q));
                    }
                }
            }
        }
        let partition = Partition::from_union_find(self.points.clone(), &mut uf);
        debug_assert!(self.is_congruence(&partition).unwrap());
        Ok(Congruence {
            partition,
            over: self.clone(),
        })
    }

    /// Reference implementation for tests: the least congruence containing
    /// the seed, found by filtering every partition of the carrier. The
    /// congruences containing a fixed seed are closed under common
    /// refinement, so their meet is the least one; that membership is
    /// asserted rather than assumed.
    pub fn least_congruence_by_enumeration(&self, seed: &[(usize, usize)]) -> Result<Congruence> {
        let candidates: Vec<Partition> = Partition::all(self.points())
            .into_iter()
            .filter(|p| {
                self.is_congruence(p).unwrap()
                    && seed.iter().all(|&(x, y)| p.same_block(x, y))
            })
            .collect();
        let least = candidates
            .iter()
            .skip(1)
            .fold(candidates[0].clone(), |acc, p| acc.meet(p));
        if !candidates.contains(&least) {
            return Err(Error::InvariantViolated(
                "meet of congruences escaped the congruence lattice".into(),
            ));
        }
        Ok(Congruence {
            partition: least,
            over: self.clone(),
        })
    }

    /// Every congruence of the table, in partition enumeration order.
    pub fn congruences(&self) -> Vec<Partition> {
        Partition::all(self.points())
            .into_iter()
            .filter(|p| self.is_congruence(p).unwrap())
            .collect()
    }
}

/// A partition validated as compatible with a specific table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence {
    partition: Partition,
    over: CayleyTable,
}

impl Congruence {
    pub fn new(table: &CayleyTable, partition: Partition) -> Result<Self> {
        if !table.is_congruence(&partition)? {
            // Name one violating pair for the diagnostic.
            let n = table.n();
            for x in 0..n {
                for y in 0..n {
                    if !partition.same_block(x, y) {
                        continue;
                    }
                    for a in 0..n {
                        if !partition.same_block(table.mul(a, x), table.mul(a, y))
                            || !partition.same_block(table.mul(x, a), table.mul(y, a))
                        {
                            return Err(Error::NotACongruence(format!(
                                "`{}` and `{}` are identified but multiplying by `{}` separates them",
                                table.points()[x],
                                table.points()[y],
                                table.points()[a]
                            )));
                        }
                    }
                }
            }
            unreachable!("incompatible partition without witness");
        }
        Ok(Congruence {
            partition,
            over: table.clone(),
        })
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn table(&self) -> &CayleyTable {
        &self.over
    }

    /// The quotient table on blocks. Compatibility makes the block product
    /// independent of representatives; this is re-verified in debug builds.
    pub fn quotient_table(&self) -> CayleyTable {
        let partition = &self.partition;
        let table = &self.over;
        let k = partition.len();
        let reps: Vec<usize> = partition
            .blocks()
            .iter()
            .map(|b| b.iter().next().unwrap())
            .collect();
        let mut entries = Vec::with_capacity(k * k);
        for &bx in &reps {
            for &by in &reps {
                entries.push(partition.block_of(table.mul(bx, by)));
            }
        }
        #[cfg(debug_assertions)]
        for (bi, b) in partition.blocks().iter().enumerate() {
            for (ci, c) in partition.blocks().iter().enumerate() {
                for x in b.iter() {
                    for y in c.iter() {
                        debug_assert_eq!(
                            partition.block_of(table.mul(x, y)),
                            entries[bi * k + ci]
                        );
                    }
                }
            }
        }
        CayleyTable::from_indices(partition.block_names(), entries)
            .expect("quotients of associative tables are associative")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn named(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn rows(rows: &[&[&str]]) -> Vec<Vec<String>> {
        rows.iter().map(|r| named(r)).collect()
    }

    /// The two-point monoid with identity `e` and absorbing `z`.
    pub fn m0() -> CayleyTable {
        CayleyTable::make_table(named(&["e", "z"]), &rows(&[&["e", "z"], &["z", "z"]]))
            .unwrap()
    }

    fn z2() -> CayleyTable {
        CayleyTable::make_table(named(&["0", "1"]), &rows(&[&["0", "1"], &["1", "0"]]))
            .unwrap()
    }

    fn z4() -> CayleyTable {
        CayleyTable::make_table(
            named(&["0", "1", "2", "3"]),
            &rows(&[
                &["0", "1", "2", "3"],
                &["1", "2", "3", "0"],
                &["2", "3", "0", "1"],
                &["3", "0", "1", "2"],
            ]),
        )
        .unwrap()
    }

    #[test]
    fn m0_flags() {
        let t = m0();
        assert_eq!(t.identity(), Some(0));
        assert!(t.is_monoid());
        assert!(!t.is_cancellative());
        assert!(!t.is_group());
    }

    #[test]
    fn z2_flags() {
        let t = z2();
        assert!(t.is_monoid() && t.is_cancellative() && t.is_group());
    }

    #[test]
    fn associativity_witness_is_first_in_scan_order() {
        let err = CayleyTable::make_table(
            named(&["a", "b"]),
            &rows(&[&["b", "b"], &["a", "a"]]),
        )
        .unwrap_err();
        match err {
            Error::AssociativityViolation { x, y, z, .. } => {
                assert_eq!((x.as_str(), y.as_str(), z.as_str()), ("a", "a", "a"));
            }
            other => panic!("wrong error: {other}"),
        }
    }

    #[test]
    fn congruence_checks() {
        let t = m0();
        assert!(t
            .is_congruence(&Partition::total(t.points().to_vec()))
            .unwrap());
        assert!(t
            .is_congruence(&Partition::identity(t.points().to_vec()))
            .unwrap());
        let t4 = z4();
        let bad = Partition::from_pairs(t4.points().to_vec(), &[(0, 1)]).unwrap();
        assert!(!t4.is_congruence(&bad).unwrap());
    }

    #[test]
    fn congruence_closure_examples() {
        let t = m0();
        let c = t.congruence_closure(&[(0, 1)]).unwrap();
        assert_eq!(c.partition().len(), 1);
        let d = t.congruence_closure(&[]).unwrap();
        assert!(d.partition().is_identity());

        let t4 = z4();
        let c = t4.congruence_closure(&[(0, 2)]).unwrap();
        assert_eq!(c.partition().len(), 2);
        assert!(c.partition().same_block(0, 2));
        assert!(c.partition().same_block(1, 3));
        assert!(!c.partition().same_block(0, 1));
    }

    #[test]
    fn closure_agrees_with_enumeration_oracle() {
        for t in [m0(), z2(), z4()] {
            let n = t.n();
            for x in 0..n {
                for y in 0..n {
                    let fast = t.congruence_closure(&[(x, y)]).unwrap();
                    let slow = t.least_congruence_by_enumeration(&[(x, y)]).unwrap();
                    assert_eq!(fast.partition(), slow.partition());
                }
            }
        }
    }

    #[test]
    fn quotient_table_examples() {
        let t = m0();
        let c = Congruence::new(&t, Partition::total(t.points().to_vec())).unwrap();
        assert_eq!(c.quotient_table().n(), 1);

        let t4 = z4();
        let c = t4.congruence_closure(&[(0, 2)]).unwrap();
        let q = c.quotient_table();
        assert_eq!(q.n(), 2);
        assert!(q.is_group());
        assert_eq!(q.points(), &["{0,2}", "{1,3}"]);

        let id = Congruence::new(&t4, Partition::identity(t4.points().to_vec())).unwrap();
        assert_eq!(id.quotient_table().entries(), t4.entries());
    }

    #[test]
    fn rejects_incompatible_partition() {
        let t4 = z4();
        let bad = Partition::from_pairs(t4.points().to_vec(), &[(0, 1)]).unwrap();
        assert!(matches!(
            Congruence::new(&t4, bad),
            Err(Error::NotACongruence(_))
        ));
    }

    #[test]
    fn projection_is_a_homomorphism() {
        let t4 = z4();
        for p in t4.congruences() {
            let c = Congruence::new(&t4, p).unwrap();
            let q = c.quotient_table();
            let h = c.partition().block_assignment();
            for x in 0..t4.n() {
                for y in 0..t4.n() {
                    assert_eq!(h[t4.mul(x, y)], q.mul(h[x], h[y]));
                }
            }
        }
    }
}
