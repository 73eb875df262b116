//! Standard Dynkin and extended Dynkin quivers in chosen orientations.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use super::Quiver;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
}

impl DynkinType {
    pub fn rank(&self) -> usize {
        match *self {
            DynkinType::A(n) | DynkinType::D(n) => n,
            DynkinType::E6 => 6,
            DynkinType::E7 => 7,
            DynkinType::E8 => 8,
        }
    }

    /// Every simply-laced type of rank at most `max_rank`, in the order A, D, E.
    pub fn all_up_to(max_rank: usize) -> Vec<DynkinType> {
        let mut out: Vec<DynkinType> = (1..=max_rank).map(DynkinType::A).collect();
        out.extend((4..=max_rank).map(DynkinType::D));
        for (r, t) in [
            (6, DynkinType::E6),
            (7, DynkinType::E7),
            (8, DynkinType::E8),
        ] {
            if r <= max_rank {
                out.push(t);
            }
        }
        out
    }

    /// Edges of the underlying graph. `A_n` is the path `0 - 1 - ... - n-1`;
    /// `D_n` hangs vertex `n-1` off vertex `n-3`; `E_n` hangs vertex `n-1` off vertex `2`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank();
        let path = |len: usize| {
            (0..len.saturating_sub(1))
                .map(|i| (i, i + 1))
                .collect::<Vec<_>>()
        };
        match *self {
            DynkinType::A(_) => path(n),
            DynkinType::D(_) => {
                let mut e = path(n - 1);
                e.push((n - 3, n - 1));
                e
            }
            DynkinType::E6 | DynkinType::E7 | DynkinType::E8 => {
                let mut e = path(n - 1);
                e.push((2, n - 1));
                e
            }
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E6 => write!(f, "E6"),
            DynkinType::E7 => write!(f, "E7"),
            DynkinType::E8 => write!(f, "E8"),
        }
    }
}

impl FromStr for DynkinType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidQuiver(format!("unknown Dynkin type `{s}`"));
        let (kind, n) = s.split_at(1.min(s.len()));
        let n: usize = n.parse().map_err(|_| bad())?;
        match (kind, n) {
            ("A", n) if n >= 1 => Ok(DynkinType::A(n)),
            ("D", n) if n >= 4 => Ok(DynkinType::D(n)),
            ("E", 6) => Ok(DynkinType::E6),
            ("E", 7) => Ok(DynkinType::E7),
            ("E", 8) => Ok(DynkinType::E8),
            _ => Err(bad()),
        }
    }
}

impl Serialize for DynkinType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// Each edge points from the smaller to the larger vertex index.
    Linear,
    /// Each edge points from the larger to the smaller vertex index.
    Reversed,
    /// Every vertex is a sink or a source.
    Bipartite,
    /// Edge directions drawn from a seeded generator.
    Random(u64),
}

impl Orientation {
    pub const STANDARD: [Orientation; 3] = [
        Orientation::Linear,
        Orientation::Reversed,
        Orientation::Bipartite,
    ];

    pub fn name(&self) -> String {
        match self {
            Orientation::Linear => "linear".into(),
            Orientation::Reversed => "reversed".into(),
            Orientation::Bipartite => "bipartite".into(),
            Orientation::Random(seed) => format!("random{seed}"),
        }
    }
}

/// Orients a forest's edges. For `Bipartite` the vertices are 2-coloured by
/// parity of distance from the smallest vertex of their component, and every
/// edge points from colour 0 to colour 1.
pub fn orient(n: usize, edges: &[(usize, usize)], orientation: Orientation) -> Vec<(usize, usize)> {
    let ordered = |&(u, v): &(usize, usize)| (u.min(v), u.max(v));
    match orientation {
        Orientation::Linear => edges.iter().map(ordered).collect(),
        Orientation::Reversed => edges.iter().map(ordered).map(|(a, b)| (b, a)).collect(),
        Orientation::Bipartite => {
            let mut color: Vec<Option<bool>> = vec![None; n];
            for start in 0..n {
                if color[start].is_some() {
                    continue;
                }
                color[start] = Some(false);
                let mut stack = vec![start];
                while let Some(v) = stack.pop() {
                    for &(a, b) in edges {
                        let w = if a == v {
                            b
                        } else if b == v {
                            a
                        } else {
                            continue;
                        };
                        if color[w].is_none() {
                            color[w] = Some(!color[v].unwrap());
                            stack.push(w);
                        }
                    }
                }
            }
            edges
                .iter()
                .map(|&(a, b)| {
                    if color[a] == Some(false) {
                        (a, b)
                    } else {
                        (b, a)
                    }
                })
                .collect()
        }
        Orientation::Random(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            edges
                .iter()
                .map(|&(a, b)| if rng.random_bool(0.5) { (a, b) } else { (b, a) })
                .collect()
        }
    }
}

pub fn dynkin_quiver(t: DynkinType, orientation: Orientation) -> Quiver {
    let edges = orient(t.rank(), &t.edges(), orientation);
    Quiver::from_edges(t.rank(), &edges).expect("Dynkin edges are valid")
}

/// Two parallel arrows `1 -> 2`.
pub fn kronecker() -> Quiver {
    Quiver::from_edges(2, &[(0, 1), (0, 1)]).expect("valid")
}

/// The oriented cycle on `n >= 2` vertices (extended type A).
pub fn oriented_cycle(n: usize) -> Quiver {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Quiver::from_edges(n, &edges).expect("valid")
}

/// Four arms of length one into a centre vertex (extended type D4).
pub fn extended_d4() -> Quiver {
    Quiver::from_edges(5, &[(0, 4), (1, 4), (2, 4), (3, 4)]).expect("valid")
}

/// A centre vertex `0` with arms of the given lengths, all arrows pointing inward.
pub fn star(arms: &[usize]) -> Quiver {
    let mut edges = Vec::new();
    let mut next = 1;
    for &len in arms {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((next, prev));
            prev = next;
            next += 1;
        }
    }
    Quiver::from_edges(next, &edges).expect("valid")
}

/// Extended type D on `n + 1` vertices, `n >= 4`: the path `0 - ... - n-2`
/// with extra leaves `n-1` on vertex `1` and `n` on vertex `n-3`.
pub fn extended_d(n: usize) -> Quiver {
    assert!(n >= 4, "extended D needs n >= 4");
    let mut edges: Vec<_> = (0..n - 2).map(|i| (i, i + 1)).collect();
    edges.push((n - 1, 1));
    edges.push((n, n - 3));
    Quiver::from_edges(n + 1, &edges).expect("valid")
}
