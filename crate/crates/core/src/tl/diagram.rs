use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

/// Planar pairings of Catalan-many diagrams get large quickly; composition
/// is quadratic in basis size, so rank 10 is a sensible ceiling.
pub const MAX_TL_RANK: usize = 10;

/// A planar (non-crossing) perfect matching of 2N boundary points of a
/// rectangle: N on the top edge, N on the bottom.
///
/// Points are stored in the boundary-walk linear order: `t_1 .. t_N` occupy
/// positions `0 .. N-1` and `b_i` occupies position `2N - i`, so planarity
/// in the rectangle is exactly non-crossing of chords in this order.
/// `pairing[v]` is the partner position of `v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TlDiagram {
    n: usize,
    pairing: Vec<u8>,
}

impl TlDiagram {
    pub fn identity(n: usize) -> Self {
        let mut pairing = vec![0u8; 2 * n];
        for i in 1..=n {
            let a = i - 1;
            let b = 2 * n - i;
            pairing[a] = b as u8;
            pairing[b] = a as u8;
        }
        Self { n, pairing }
    }

    /// The cup-cap generator E_k: arcs (t_k, t_{k+1}) and (b_k, b_{k+1}),
    /// all other strands passing through.
    pub fn generator(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k >= n {
            return Err(Error::IndexOutOfRange { rank: n, index: k });
        }
        let mut d = Self::identity(n);
        let tk = k - 1;
        let tk1 = k;
        let bk = 2 * n - k;
        let bk1 = 2 * n - k - 1;
        d.pairing[tk] = tk1 as u8;
        d.pairing[tk1] = tk as u8;
        d.pairing[bk] = bk1 as u8;
        d.pairing[bk1] = bk as u8;
        Ok(d)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pairing(&self) -> &[u8] {
        &self.pairing
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    fn from_pairing(n: usize, pairing: Vec<u8>) -> Self {
        debug_assert_eq!(pairing.len(), 2 * n);
        Self { n, pairing }
    }

    pub(crate) fn from_pairing_unchecked(n: usize, pairing: Vec<u8>) -> Self {
        Self::from_pairing(n, pairing)
    }

    /// Human-readable arc list, `t`/`b` labelled and 1-based, sorted.
    pub fn arcs(&self) -> Vec<(String, String)> {
        let name = |v: usize| {
            if v < self.n {
                format!("t{}", v + 1)
            } else {
                format!("b{}", 2 * self.n - v)
            }
        };
        let mut out = Vec::new();
        for v in 0..2 * self.n {
            let w = self.pairing[v] as usize;
            if v < w {
                out.push((name(v), name(w)));
            }
        }
        out
    }

    /// Diagram shifted by `shift` strands inside rank `target`, with new
    /// through-strands filling the margins.
    pub fn shift_embed(&self, target: usize, shift: usize) -> Result<Self> {
        if target < self.n + shift {
            return Err(Error::RankOverflow {
                needed: self.n + shift,
                available: target,
            });
        }
        let m = target;
        let mut d = Self::identity(m);
        let map = |v: usize| -> usize {
            if v < self.n {
                // t_{i} -> t_{i + shift}
                v + shift
            } else {
                // b_i -> b_{i + shift}
                let i = 2 * self.n - v;
                2 * m - (i + shift)
            }
        };
        for v in 0..2 * self.n {
            let w = self.pairing[v] as usize;
            let (mv, mw) = (map(v), map(w));
            d.pairing[mv] = mw as u8;
            d.pairing[mw] = mv as u8;
        }
        Ok(d)
    }
}

impl fmt::Display for TlDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (a, b)) in self.arcs().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}-{b}")?;
        }
        write!(f, "}}")
    }
}

/// Stacks `x` above `y` (x's bottom edge glued to y's top edge), returning
/// the number of closed loops removed and the resulting diagram.
pub fn compose(x: &TlDiagram, y: &TlDiagram) -> (usize, TlDiagram) {
    debug_assert_eq!(x.n, y.n);
    let n = x.n;
    let total = 4 * n;
    // Combined node index: x nodes 0..2n, y nodes 2n..4n.
    // Interior nodes: x's bottom (n..2n) and y's top (2n..3n).
    let glue_x_bottom = |v: usize| -> usize {
        // x's b_i (linear 2n - i) glues to y's t_i (linear i - 1).
        let i = 2 * n - v;
        2 * n + (i - 1)
    };
    let glue_y_top = |v: usize| -> usize {
        let j = v - 2 * n; // t_{j+1} of y
        2 * n - (j + 1)
    };
    let arc_partner = |v: usize| -> usize {
        if v < 2 * n {
            x.pairing[v] as usize
        } else {
            2 * n + y.pairing[v - 2 * n] as usize
        }
    };
    let is_boundary = |v: usize| v < n || v >= 3 * n;
    let mut visited = vec![false; total];
    let mut pairing = vec![0u8; 2 * n];
    for start in (0..n).chain(3 * n..4 * n) {
        if visited[start] {
            continue;
        }
        visited[start] = true;
        let mut cur = arc_partner(start);
        loop {
            visited[cur] = true;
            if is_boundary(cur) {
                break;
            }
            let glued = if cur < 2 * n {
                glue_x_bottom(cur)
            } else {
                glue_y_top(cur)
            };
            visited[glued] = true;
            cur = arc_partner(glued);
        }
        // Map combined boundary nodes to result linear positions: x-top
        // keeps its position; y's bottom node 2n + w maps to w.
        let map = |v: usize| if v < n { v } else { v - 2 * n };
        let (a, b) = (map(start), map(cur));
        pairing[a] = b as u8;
        pairing[b] = a as u8;
    }
    // Remaining unvisited interior nodes form closed loops.
    let mut loops = 0;
    for start in n..3 * n {
        if visited[start] {
            continue;
        }
        loops += 1;
        let mut cur = start;
        while !visited[cur] {
            visited[cur] = true;
            let glued = if cur < 2 * n {
                glue_x_bottom(cur)
            } else {
                glue_y_top(cur)
            };
            visited[glued] = true;
            cur = arc_partner(glued);
        }
    }
    (loops, TlDiagram::from_pairing(n, pairing))
}

/// The diagram basis of TL_n, enumerated once per rank: all non-crossing
/// perfect matchings of the 2n boundary points, of Catalan(n) size.
#[derive(Debug)]
pub struct TlTables {
    n: usize,
    diagrams: Vec<TlDiagram>,
    index: HashMap<Vec<u8>, u32>,
    identity_idx: u32,
}

impl TlTables {
    pub fn get(n: usize) -> Result<Arc<Self>> {
        if n == 0 || n > MAX_TL_RANK {
            return Err(Error::RankOverflow {
                needed: n,
                available: MAX_TL_RANK,
            });
        }
        static REGISTRY: OnceLock<Mutex<HashMap<usize, Arc<TlTables>>>> = OnceLock::new();
        let registry = REGISTRY.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = registry.lock().expect("tl registry poisoned");
        Ok(guard.entry(n).or_insert_with(|| Arc::new(Self::build(n))).clone())
    }

    fn build(n: usize) -> Self {
        let mut matchings = Vec::new();
        let mut current = vec![0u8; 2 * n];
        enumerate_noncrossing(vec![(0, 2 * n)], &mut current, &mut matchings);
        let diagrams: Vec<TlDiagram> = matchings
            .into_iter()
            .map(|pairing| TlDiagram::from_pairing(n, pairing))
            .collect();
        let mut index = HashMap::with_capacity(diagrams.len());
        for (i, d) in diagrams.iter().enumerate() {
            index.insert(d.pairing.clone(), i as u32);
        }
        let identity_idx = index[&TlDiagram::identity(n).pairing];
        Self {
            n,
            diagrams,
            index,
            identity_idx,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.diagrams.len()
    }

    pub fn diagram(&self, idx: usize) -> &TlDiagram {
        &self.diagrams[idx]
    }

    pub fn identity_idx(&self) -> usize {
        self.identity_idx as usize
    }

    pub fn index_of(&self, d: &TlDiagram) -> usize {
        self.index[&d.pairing] as usize
    }

    /// Composition through the diagram walk, returning `(loops, index)`.
    pub fn compose_idx(&self, i: usize, j: usize) -> (usize, usize) {
        let (loops, d) = compose(&self.diagrams[i], &self.diagrams[j]);
        (loops, self.index_of(&d))
    }
}

/// All non-crossing perfect matchings, driven by a stack of still-unmatched
/// contiguous segments `[lo, hi)`. The leftmost point of a segment pairs at
/// odd distance; the arc splits the segment into independent inside and
/// outside pieces, which is exactly the Catalan recursion.
fn enumerate_noncrossing(
    mut stack: Vec<(usize, usize)>,
    current: &mut Vec<u8>,
    out: &mut Vec<Vec<u8>>,
) {
    loop {
        match stack.last() {
            None => {
                out.push(current.clone());
                return;
            }
            Some(&(lo, hi)) if lo == hi => {
                stack.pop();
            }
            _ => break,
        }
    }
    let (lo, hi) = stack.pop().expect("non-empty segment");
    let mut b = lo + 1;
    while b < hi {
        current[lo] = b as u8;
        current[b] = lo as u8;
        let mut next = stack.clone();
        next.push((b + 1, hi));
        next.push((lo + 1, b));
        enumerate_noncrossing(next, current, out);
        b += 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_dimensions() {
        let expect = [1usize, 2, 5, 14, 42];
        for (i, &c) in expect.iter().enumerate() {
            let n = i + 1;
            let t = TlTables::get(n).unwrap();
            assert_eq!(t.size(), c, "Catalan({n})");
        }
    }

    #[test]
    fn identity_composes_neutrally() {
        let t = TlTables::get(4).unwrap();
        let id = t.identity_idx();
        for i in 0..t.size() {
            let (loops, j) = t.compose_idx(id, i);
            assert_eq!((loops, j), (0, i));
            let (loops, j) = t.compose_idx(i, id);
            assert_eq!((loops, j), (0, i));
        }
    }

    #[test]
    fn generator_composition_rules() {
        let t = TlTables::get(4).unwrap();
        let e = |k: usize| t.index_of(&TlDiagram::generator(4, k).unwrap());
        // E_k E_k = one loop times E_k.
        for k in 1..4 {
            let (loops, idx) = t.compose_idx(e(k), e(k));
            assert_eq!((loops, idx), (1, e(k)));
        }
        // E_1 E_2 E_1 = E_1, no loops.
        let (l1, a) = t.compose_idx(e(1), e(2));
        let (l2, b) = t.compose_idx(a, e(1));
        assert_eq!((l1 + l2, b), (0, e(1)));
        // E_1 E_3 = E_3 E_1 (disjoint diagrams commute).
        let (l1, x) = t.compose_idx(e(1), e(3));
        let (l2, y) = t.compose_idx(e(3), e(1));
        assert_eq!(l1, 0);
        assert_eq!(l2, 0);
        assert_eq!(x, y);
    }

    #[test]
    fn composition_is_associative_on_all_triples() {
        let t = TlTables::get(3).unwrap();
        for i in 0..t.size() {
            for j in 0..t.size() {
                for k in 0..t.size() {
                    let (l1, ij) = t.compose_idx(i, j);
                    let (l2, ijk) = t.compose_idx(ij, k);
                    let (r1, jk) = t.compose_idx(j, k);
                    let (r2, ijk2) = t.compose_idx(i, jk);
                    assert_eq!(ijk, ijk2);
                    assert_eq!(l1 + l2, r1 + r2);
                }
            }
        }
    }

    #[test]
    fn shift_embed_diagram() {
        let e1 = TlDiagram::generator(3, 1).unwrap();
        let shifted = e1.shift_embed(5, 1).unwrap();
        assert_eq!(shifted, TlDiagram::generator(5, 2).unwrap());
        assert!(e1.shift_embed(3, 1).is_err());
    }

    #[test]
    fn rendering_is_deterministic() {
        // Position order puts b2 before b1 in the boundary walk.
        let e1 = TlDiagram::generator(2, 1).unwrap();
        assert_eq!(e1.to_string(), "{t1-t2, b2-b1}");
        let id = TlDiagram::identity(2);
        assert_eq!(id.to_string(), "{t1-b1, t2-b2}");
    }
}
