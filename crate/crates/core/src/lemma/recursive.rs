//! Inductive construction of a Theta-Theta_k path for a Theta6 edge:
//! `xi(a, b) = xi(a, a') + a'b' + xi(b', b)`, where both detours are
//! shortest Theta6 paths whose edges are expanded recursively.

use std::collections::{HashMap, HashSet};

use super::config::ThetaFamily;
use crate::analysis::PathWitness;
use crate::error::{Error, Result};

/// Builds Theta-Theta_k paths for Theta6 edges, sharing expansions across
/// calls.
#[derive(Debug)]
pub struct RecursivePaths<'a> {
    family: &'a ThetaFamily,
    memo: HashMap<(usize, usize), Vec<usize>>,
    in_progress: HashSet<(usize, usize)>,
    expansions: usize,
    limit: usize,
}

impl<'a> RecursivePaths<'a> {
    pub fn new(family: &'a ThetaFamily) -> Result<Self> {
        if family.scheme.k() < 30 {
            return Err(Error::InvalidParameter(format!(
                "recursive paths need k = 6k' with k' >= 5, got k = {}",
                family.scheme.k()
            )));
        }
        let n = family.points().len();
        Ok(Self {
            family,
            memo: HashMap::new(),
            in_progress: HashSet::new(),
            expansions: 0,
            limit: (n * n).max(1),
        })
    }

    /// Path between the endpoints of the Theta6 edge `{a, b}` (either
    /// direction) using only Theta-Theta_k edges.
    pub fn path(&mut self, a: usize, b: usize) -> Result<PathWitness> {
        let vertices = self.expand_undirected(a, b)?;
        Ok(PathWitness::from_vertices(&self.family.theta_theta_k, vertices))
    }

    fn expand_undirected(&mut self, u: usize, v: usize) -> Result<Vec<usize>> {
        let theta6 = &self.family.theta6;
        if theta6.contains_edge(u, v) {
            self.expand(u, v)
        } else if theta6.contains_edge(v, u) {
            let mut path = self.expand(v, u)?;
            path.reverse();
            Ok(path)
        } else {
            Err(Error::InvalidParameter(format!(
                "{u}-{v} is not an edge of theta6"
            )))
        }
    }

    fn expand(&mut self, a: usize, b: usize) -> Result<Vec<usize>> {
        if let Some(path) = self.memo.get(&(a, b)) {
            return Ok(path.clone());
        }
        let violated = |reason: String| Error::InductionViolated {
            source_id: a,
            target_id: b,
            reason,
        };
        if self.family.theta_theta_k.contains_undirected(a, b) {
            self.memo.insert((a, b), vec![a, b]);
            return Ok(vec![a, b]);
        }
        if !self.in_progress.insert((a, b)) {
            return Err(violated("edge depends on itself".into()));
        }
        self.expansions += 1;
        if self.expansions > self.limit {
            return Err(violated(format!("more than {} expansions", self.limit)));
        }

        let family = self.family;
        let b_prime = family.b_prime(a, b);
        let a_prime = family.a_prime(b_prime, a);
        let mut path = vec![a];
        let first = family
            .theta6_path(a, a_prime)
            .ok_or_else(|| violated(format!("{a} and {a_prime} disconnected in theta6")))?;
        for w in first.vertices.windows(2) {
            let piece = self.expand_undirected(w[0], w[1])?;
            path.extend_from_slice(&piece[1..]);
        }
        // a'b' is a Theta-Theta_k edge by construction
        path.push(b_prime);
        let second = family
            .theta6_path(b_prime, b)
            .ok_or_else(|| violated(format!("{b_prime} and {b} disconnected in theta6")))?;
        for w in second.vertices.windows(2) {
            let piece = self.expand_undirected(w[0], w[1])?;
            path.extend_from_slice(&piece[1..]);
        }

        self.in_progress.remove(&(a, b));
        self.memo.insert((a, b), path.clone());
        Ok(path)
    }
}

/// One-off version of [`RecursivePaths::path`].
pub fn recursive_theta_path(family: &ThetaFamily, a: usize, b: usize) -> Result<PathWitness> {
    RecursivePaths::new(family)?.path(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{ConeScheme, PointSet};

    fn family(points: &PointSet, k: usize) -> ThetaFamily {
        ThetaFamily::build(points, &ConeScheme::new(k).unwrap()).unwrap()
    }

    #[test]
    fn base_case_is_the_edge() {
        let set = PointSet::from_coords([(0.0, 0.0), (1.0, 0.2)]).unwrap();
        let fam = family(&set, 30);
        let p = recursive_theta_path(&fam, 0, 1).unwrap();
        assert_eq!(p.vertices, vec![0, 1]);
        let p = recursive_theta_path(&fam, 1, 0).unwrap();
        assert_eq!(p.vertices, vec![1, 0]);
    }

    #[test]
    fn needs_k_prime_at_least_five() {
        let set = PointSet::from_coords([(0.0, 0.0), (1.0, 0.2)]).unwrap();
        let fam = family(&set, 24);
        assert!(matches!(
            recursive_theta_path(&fam, 0, 1),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn rejects_non_edges() {
        let set = PointSet::from_coords([(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)]).unwrap();
        let fam = family(&set, 30);
        assert!(recursive_theta_path(&fam, 0, 2).is_err());
    }

    #[test]
    fn paths_use_theta_theta_edges_and_end_correctly() {
        let coords: Vec<(f64, f64)> = (0..60)
            .map(|i| {
                let t = i as f64;
                ((t * 0.754_877_666).fract() * 10.0, (t * 0.569_840_29).fract() * 10.0)
            })
            .collect();
        let set = PointSet::from_coords(coords).unwrap();
        let fam = family(&set, 30);
        let mut rec = RecursivePaths::new(&fam).unwrap();
        for e in fam.theta6.edges() {
            let p = rec.path(e.source, e.target).unwrap();
            assert_eq!(p.vertices.first(), Some(&e.source));
            assert_eq!(p.vertices.last(), Some(&e.target));
            for w in p.vertices.windows(2) {
                assert!(fam.theta_theta_k.contains_undirected(w[0], w[1]));
            }
            assert!(p.length <= 8.38 * e.length + 1e-9);
        }
    }
}
