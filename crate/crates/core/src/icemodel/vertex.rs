use std::fmt;

use super::WeightKind;
use crate::asmcount::Asm;
use crate::error::{Error, Result};

/// The six arrow configurations around a vertex.
///
/// Each variant is determined by the states of its four edges. A horizontal
/// edge is `0` when its arrow points right and `1` when it points left; a
/// vertical edge is `0` pointing up and `1` pointing down. With domain wall
/// boundaries these are the running row and column sums of the ASM.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexKind {
    /// right, right, up, up
    A1,
    /// left, left, down, down
    A2,
    /// right, right, down, down
    B1,
    /// left, left, up, up
    B2,
    /// horizontal arrows in, vertical arrows out
    C1,
    /// horizontal arrows out, vertical arrows in
    C2,
}

impl VertexKind {
    pub const ALL: [VertexKind; 6] = [
        VertexKind::A1,
        VertexKind::A2,
        VertexKind::B1,
        VertexKind::B2,
        VertexKind::C1,
        VertexKind::C2,
    ];

    /// Kind from the left and top edge states and the ASM entry.
    pub fn from_state(left: u8, top: u8, entry: i8) -> Option<VertexKind> {
        Some(match (left, top, entry) {
            (0, 0, 0) => VertexKind::A1,
            (1, 1, 0) => VertexKind::A2,
            (0, 1, 0) => VertexKind::B1,
            (1, 0, 0) => VertexKind::B2,
            (0, 0, 1) => VertexKind::C1,
            (1, 1, -1) => VertexKind::C2,
            _ => return None,
        })
    }

    /// Edge states `(left, right, top, bottom)`.
    pub fn edges(self) -> (u8, u8, u8, u8) {
        match self {
            VertexKind::A1 => (0, 0, 0, 0),
            VertexKind::A2 => (1, 1, 1, 1),
            VertexKind::B1 => (0, 0, 1, 1),
            VertexKind::B2 => (1, 1, 0, 0),
            VertexKind::C1 => (0, 1, 0, 1),
            VertexKind::C2 => (1, 0, 1, 0),
        }
    }

    pub fn entry(self) -> i8 {
        match self {
            VertexKind::C1 => 1,
            VertexKind::C2 => -1,
            _ => 0,
        }
    }

    pub fn weight_kind(self) -> WeightKind {
        match self {
            VertexKind::A1 | VertexKind::A2 => WeightKind::A,
            VertexKind::B1 | VertexKind::B2 => WeightKind::B,
            VertexKind::C1 | VertexKind::C2 => WeightKind::C,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            VertexKind::A1 => "a1",
            VertexKind::A2 => "a2",
            VertexKind::B1 => "b1",
            VertexKind::B2 => "b2",
            VertexKind::C1 => "c1",
            VertexKind::C2 => "c2",
        }
    }
}

/// A full lattice state, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexGrid {
    n: usize,
    kinds: Vec<VertexKind>,
}

impl VertexGrid {
    /// Validates arrow agreement on shared edges and domain wall boundaries.
    pub fn new(n: usize, kinds: Vec<VertexKind>) -> Result<Self> {
        if kinds.len() != n * n {
            return Err(Error::InvalidGrid(format!("{} vertices for order {n}", kinds.len())));
        }
        let grid = VertexGrid { n, kinds };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        for i in 0..n {
            let mut h = 0;
            for j in 0..n {
                let (l, r, _, _) = self.get(i, j).edges();
                if l != h {
                    return Err(Error::InvalidGrid(format!("horizontal mismatch left of ({i},{j})")));
                }
                h = r;
            }
            if h != 1 {
                return Err(Error::InvalidGrid(format!("row {i} right boundary points outward")));
            }
        }
        for j in 0..n {
            let mut v = 0;
            for i in 0..n {
                let (_, _, t, b) = self.get(i, j).edges();
                if t != v {
                    return Err(Error::InvalidGrid(format!("vertical mismatch above ({i},{j})")));
                }
                v = b;
            }
            if v != 1 {
                return Err(Error::InvalidGrid(format!("column {j} bottom boundary points inward")));
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> VertexKind {
        self.kinds[i * self.n + j]
    }

    pub fn kinds(&self) -> &[VertexKind] {
        &self.kinds
    }

    pub fn count(&self, kind: VertexKind) -> usize {
        self.kinds.iter().filter(|&&k| k == kind).count()
    }

    pub fn count_c(&self) -> usize {
        self.count(VertexKind::C1) + self.count(VertexKind::C2)
    }

    pub fn to_asm(&self) -> Asm {
        Asm::new(self.n, self.kinds.iter().map(|k| k.entry()).collect())
            .expect("a valid grid encodes an ASM")
    }
}

impl fmt::Display for VertexGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<&str> = (0..self.n).map(|j| self.get(i, j).label()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

pub fn asm_to_vertex_grid(m: &Asm) -> Result<VertexGrid> {
    let n = m.order();
    let mut col = vec![0u8; n];
    let mut kinds = Vec::with_capacity(n * n);
    for i in 0..n {
        let mut h = 0u8;
        for j in 0..n {
            let e = m.get(i, j);
            let kind = VertexKind::from_state(h, col[j], e)
                .ok_or_else(|| Error::InvalidAsm(format!("entry ({i},{j}) breaks alternation")))?;
            let (_, r, _, b) = kind.edges();
            h = r;
            col[j] = b;
            kinds.push(kind);
        }
    }
    VertexGrid::new(n, kinds).map_err(|e| Error::InvalidAsm(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asmcount::generate_asms;

    #[test]
    fn ice_rule_for_every_kind() {
        for k in VertexKind::ALL {
            let (l, r, t, b) = k.edges();
            // arrows in: left edge pointing right, right edge pointing left,
            // top edge pointing down, bottom edge pointing up
            let inward = (l == 0) as u8 + (r == 1) as u8 + (t == 1) as u8 + (b == 0) as u8;
            assert_eq!(inward, 2, "{k:?}");
            assert_eq!(VertexKind::from_state(l, t, k.entry()), Some(k));
            assert_eq!(r as i8 - l as i8, k.entry());
            assert_eq!(b as i8 - t as i8, k.entry());
        }
    }

    #[test]
    fn small_grids() {
        let one = asm_to_vertex_grid(&Asm::identity(1)).unwrap();
        assert_eq!(one.kinds(), &[VertexKind::C1]);
        let two = asm_to_vertex_grid(&Asm::identity(2)).unwrap();
        assert_eq!(two.count_c(), 2);
        let middle = Asm::from_rows(&[vec![0, 1, 0], vec![1, -1, 1], vec![0, 1, 0]]).unwrap();
        let g = asm_to_vertex_grid(&middle).unwrap();
        assert_eq!(g.count_c(), 5);
        assert_eq!(g.get(1, 1), VertexKind::C2);
    }

    #[test]
    fn bijection_round_trip() {
        for n in 1..=5 {
            for m in generate_asms(n, 7).unwrap() {
                let g = asm_to_vertex_grid(&m).unwrap();
                assert_eq!(g.to_asm(), m);
                assert_eq!(g.count_c(), 2 * m.count_negative() + n);
            }
        }
    }

    #[test]
    fn broken_grid_rejected() {
        assert!(VertexGrid::new(1, vec![VertexKind::A1]).is_err());
        assert!(VertexGrid::new(2, vec![VertexKind::C1; 4]).is_err());
        assert!(VertexGrid::new(2, vec![VertexKind::C1; 3]).is_err());
    }
}
