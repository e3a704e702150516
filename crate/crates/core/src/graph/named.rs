use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::Graph;
use crate::error::{Error, Result};

/// Named graphs with fixed vertex numberings.
///
/// * `Clique(k)`: vertices `0..k`.
/// * `Cycle(n)`: edges `i ~ i+1 (mod n)`, `n >= 3`.
/// * `Path(n)`: `n` vertices, edges `i ~ i+1`.
/// * `Kneser(n, k)`: the `k`-subsets of `0..n` in lexicographic order,
///   adjacent iff disjoint.
/// * `Grotzsch`: Mycielskian of C5. Outer cycle `0..5`, inner vertex `5+i`
///   adjacent to outer `i-1` and `i+1`, hub `10` adjacent to every inner vertex.
/// * `Brinkmann`: three orbits of seven under a rotation. Outer `a_i = i` with
///   `a_i ~ a_{i+2}`; middle `b_i = 7+i` with `b_i ~ a_{i+3}, a_{i-3}, c_{i+1}, c_{i-1}`;
///   inner `c_i = 14+i` with `c_i ~ c_{i+3}` (indices mod 7).
/// * `Chvatal`: the 12-vertex, 4-regular, triangle-free, 4-chromatic graph;
///   outer square `0-1-2-3`, inner vertices `4..12` (see the edge table).
/// * `Petersen`: outer cycle `0..5`, spokes `i ~ 5+i`, inner pentagram `5+i ~ 5+(i+2)`.
/// * `Bowtie`: two triangles `{0,1,2}` and `{0,3,4}` sharing vertex `0`.
/// * `K1Star`: one vertex with a loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedGraph {
    Clique(usize),
    Cycle(usize),
    Path(usize),
    Kneser(usize, usize),
    Grotzsch,
    Brinkmann,
    Chvatal,
    Petersen,
    Bowtie,
    K1Star,
}

const CHVATAL_EDGES: [(usize, usize); 24] = [
    (0, 1), (1, 2), (2, 3), (3, 0),
    (0, 4), (4, 8), (8, 7), (7, 11), (11, 4), (4, 9),
    (0, 5), (5, 6), (6, 10), (10, 9), (9, 5), (5, 8),
    (6, 1), (1, 7), (7, 10), (10, 3), (3, 11), (11, 6),
    (8, 2), (2, 9),
];

impl NamedGraph {
    pub fn build(self) -> Result<Graph> {
        match self {
            NamedGraph::Clique(k) => {
                Graph::new(k, (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))))
            }
            NamedGraph::Cycle(n) => {
                if n < 3 {
                    return Err(Error::InvalidParameters(format!("cycle needs n >= 3, got {n}")));
                }
                Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
            }
            NamedGraph::Path(n) => Graph::new(n, (1..n).map(|i| (i - 1, i))),
            NamedGraph::Kneser(n, k) => kneser(n, k),
            NamedGraph::Grotzsch => Graph::new(
                11,
                (0..5).flat_map(|i| {
                    [
                        (i, (i + 1) % 5),
                        (5 + i, (i + 4) % 5),
                        (5 + i, (i + 1) % 5),
                        (5 + i, 10),
                    ]
                }),
            ),
            NamedGraph::Brinkmann => Graph::new(
                21,
                (0..7).flat_map(|i| {
                    [
                        (i, (i + 2) % 7),
                        (7 + i, (i + 3) % 7),
                        (7 + i, (i + 4) % 7),
                        (7 + i, 14 + (i + 1) % 7),
                        (7 + i, 14 + (i + 6) % 7),
                        (14 + i, 14 + (i + 3) % 7),
                    ]
                }),
            ),
            NamedGraph::Chvatal => Graph::new(12, CHVATAL_EDGES),
            NamedGraph::Petersen => Graph::new(
                10,
                (0..5).flat_map(|i| [(i, (i + 1) % 5), (i, 5 + i), (5 + i, 5 + (i + 2) % 5)]),
            ),
            NamedGraph::Bowtie => Graph::new(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]),
            NamedGraph::K1Star => Graph::new(1, [(0, 0)]),
        }
    }
}

fn kneser(n: usize, k: usize) -> Result<Graph> {
    if k == 0 || k > n || n > 64 {
        return Err(Error::InvalidParameters(format!(
            "kneser({n},{k}) needs 1 <= k <= n <= 64"
        )));
    }
    let mut sets: Vec<u64> = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        sets.push(cur.iter().fold(0u64, |m, &i| m | 1 << i));
        // next k-combination in lexicographic order
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            break;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
    let mut edges = Vec::new();
    for (i, a) in sets.iter().enumerate() {
        for (j, b) in sets.iter().enumerate().skip(i + 1) {
            if a & b == 0 {
                edges.push((i, j));
            }
        }
    }
    Graph::new(sets.len(), edges)
}

impl fmt::Display for NamedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedGraph::Clique(k) => write!(f, "clique:{k}"),
            NamedGraph::Cycle(n) => write!(f, "cycle:{n}"),
            NamedGraph::Path(n) => write!(f, "path:{n}"),
            NamedGraph::Kneser(n, k) => write!(f, "kneser:{n},{k}"),
            NamedGraph::Grotzsch => f.write_str("grotzsch"),
            NamedGraph::Brinkmann => f.write_str("brinkmann"),
            NamedGraph::Chvatal => f.write_str("chvatal"),
            NamedGraph::Petersen => f.write_str("petersen"),
            NamedGraph::Bowtie => f.write_str("bowtie"),
            NamedGraph::K1Star => f.write_str("k1star"),
        }
    }
}

impl FromStr for NamedGraph {
    type Err = Error;

    /// Parses `clique:3`, `cycle:5`, `path:4`, `kneser:5,2` or a bare name.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, args) = match s.split_once(':') {
            Some((name, args)) => (name, Some(args)),
            None => (s, None),
        };
        let nums = |args: Option<&str>, want: usize| -> Result<Vec<usize>> {
            let args = args.ok_or_else(|| Error::InvalidParameters(format!("`{s}` needs parameters")))?;
            let v = args
                .split(',')
                .map(|a| a.trim().parse::<usize>())
                .collect::<core::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::InvalidParameters(format!("`{s}`: {e}")))?;
            if v.len() != want {
                return Err(Error::InvalidParameters(format!(
                    "`{s}` takes {want} parameter(s)"
                )));
            }
            Ok(v)
        };
        let plain = |g: NamedGraph| -> Result<NamedGraph> {
            match args {
                None => Ok(g),
                Some(_) => Err(Error::InvalidParameters(format!("`{name}` takes no parameters"))),
            }
        };
        match name.to_ascii_lowercase().as_str() {
            "clique" | "k" => Ok(NamedGraph::Clique(nums(args, 1)?[0])),
            "cycle" | "c" => Ok(NamedGraph::Cycle(nums(args, 1)?[0])),
            "path" => Ok(NamedGraph::Path(nums(args, 1)?[0])),
            "kneser" => {
                let v = nums(args, 2)?;
                Ok(NamedGraph::Kneser(v[0], v[1]))
            }
            "grotzsch" | "grötzsch" => plain(NamedGraph::Grotzsch),
            "brinkmann" => plain(NamedGraph::Brinkmann),
            "chvatal" | "chvátal" => plain(NamedGraph::Chvatal),
            "petersen" => plain(NamedGraph::Petersen),
            "bowtie" => plain(NamedGraph::Bowtie),
            "k1star" | "k1*" => plain(NamedGraph::K1Star),
            _ => Err(Error::UnknownGraph(String::from(s))),
        }
    }
}

impl NamedGraph {
    /// Canonical id string, accepted back by `FromStr`.
    pub fn id(&self) -> String {
        self.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn regular(g: &Graph) -> Option<usize> {
        let d = g.degree(0);
        (0..g.n()).all(|v| g.degree(v) == d).then_some(d)
    }

    #[test]
    fn brinkmann_is_4_regular_on_21() {
        let g = NamedGraph::Brinkmann.build().unwrap();
        assert_eq!(g.n(), 21);
        assert_eq!(g.edge_count(), 42);
        assert_eq!(regular(&g), Some(4));
    }

    #[test]
    fn grotzsch_has_20_edges() {
        let g = NamedGraph::Grotzsch.build().unwrap();
        assert_eq!((g.n(), g.edge_count()), (11, 20));
    }

    #[test]
    fn chvatal_is_4_regular_on_12() {
        let g = NamedGraph::Chvatal.build().unwrap();
        assert_eq!((g.n(), g.edge_count()), (12, 24));
        assert_eq!(regular(&g), Some(4));
    }

    #[test]
    fn bowtie_shape() {
        let g = NamedGraph::Bowtie.build().unwrap();
        assert_eq!((g.n(), g.edge_count(), g.degree(0)), (5, 6, 4));
    }

    #[test]
    fn kneser_5_2_is_3_regular_on_10() {
        let g = NamedGraph::Kneser(5, 2).build().unwrap();
        assert_eq!((g.n(), g.edge_count()), (10, 15));
        assert_eq!(regular(&g), Some(3));
        assert!(NamedGraph::Kneser(2, 3).build().is_err());
    }

    #[test]
    fn parse_roundtrip() {
        for id in ["clique:4", "cycle:7", "path:3", "kneser:7,3", "grotzsch", "k1star", "bowtie"] {
            let g: NamedGraph = id.parse().unwrap();
            assert_eq!(g.id(), id);
        }
        assert!(matches!("heawood".parse::<NamedGraph>(), Err(Error::UnknownGraph(_))));
        assert!("cycle".parse::<NamedGraph>().is_err());
        assert!("bowtie:3".parse::<NamedGraph>().is_err());
    }
}
