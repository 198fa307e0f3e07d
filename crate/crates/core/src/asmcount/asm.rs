use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Square matrix over `{-1, 0, 1}` whose rows and columns each sum to one with
/// every partial sum in `{0, 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Asm {
    n: usize,
    entries: Vec<i8>,
}

impl Asm {
    pub fn new(n: usize, entries: Vec<i8>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::InvalidAsm(format!(
                "expected {} entries, got {}",
                n * n,
                entries.len()
            )));
        }
        let asm = Asm { n, entries };
        asm.validate()?;
        Ok(asm)
    }

    pub fn from_rows(rows: &[Vec<i8>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidAsm("rows of unequal length".into()));
        }
        Self::new(n, rows.concat())
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        Asm { n, entries }
    }

    /// Permutation matrix with a one at `(i, perm[i])`.
    pub fn from_permutation(perm: &[usize]) -> Result<Self> {
        let n = perm.len();
        let mut entries = vec![0; n * n];
        for (i, &j) in perm.iter().enumerate() {
            if j >= n {
                return Err(Error::InvalidAsm(format!("column {j} out of range")));
            }
            entries[i * n + j] = 1;
        }
        Self::new(n, entries)
    }

    fn validate(&self) -> Result<()> {
        let n = self.n;
        if n == 0 {
            return Err(Error::InvalidAsm("order must be positive".into()));
        }
        if let Some(bad) = self.entries.iter().find(|e| !(-1..=1).contains(*e)) {
            return Err(Error::InvalidAsm(format!("entry {bad} not in {{-1,0,1}}")));
        }
        for line in 0..n {
            let mut row = 0i32;
            let mut col = 0i32;
            for k in 0..n {
                row += self.get(line, k) as i32;
                col += self.get(k, line) as i32;
                if !(0..=1).contains(&row) {
                    return Err(Error::InvalidAsm(format!("row {line} partial sum {row}")));
                }
                if !(0..=1).contains(&col) {
                    return Err(Error::InvalidAsm(format!("column {line} partial sum {col}")));
                }
            }
            if row != 1 || col != 1 {
                return Err(Error::InvalidAsm(format!("line {line} does not sum to 1")));
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i8]> {
        self.entries.chunks(self.n)
    }

    pub fn count_negative(&self) -> usize {
        self.entries.iter().filter(|&&e| e < 0).count()
    }

    /// Invariance under rotation by 180 degrees.
    pub fn is_half_turn_symmetric(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| (0..n).all(|j| self.get(i, j) == self.get(n - 1 - i, n - 1 - j)))
    }

    /// 1-based row of the unique one in the leftmost column.
    pub fn first_column_one_row(&self) -> usize {
        (0..self.n)
            .find(|&i| self.get(i, 0) == 1)
            .map(|i| i + 1)
            .expect("validated ASM has a one in every column")
    }

    /// `Σ_{k<=j} A[i][k]`, the row partial sum through column `j`.
    pub fn row_prefix(&self, i: usize, j: usize) -> i8 {
        (0..=j).map(|k| self.get(i, k)).sum()
    }

    /// `Σ_{k<=i} A[k][j]`, the column partial sum through row `i`.
    pub fn col_prefix(&self, i: usize, j: usize) -> i8 {
        (0..=i).map(|k| self.get(k, j)).sum()
    }
}

impl fmt::Display for Asm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<&str> = row
                .iter()
                .map(|&e| match e {
                    1 => "+",
                    -1 => "-",
                    _ => "0",
                })
                .collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

pub const DEFAULT_ASM_CAP: usize = 7;

/// A valid row given which columns currently carry partial sum one.
#[derive(Debug)]
struct RowOption {
    entries: Vec<i8>,
    next_state: u32,
}

/// Every admissible row for a column state, memoized per state.
#[derive(Debug, Default)]
struct RowTable {
    width: usize,
    by_state: HashMap<u32, Arc<Vec<RowOption>>>,
}

impl RowTable {
    fn new(width: usize) -> Self {
        RowTable {
            width,
            by_state: HashMap::new(),
        }
    }

    fn rows_for(&mut self, state: u32) -> Arc<Vec<RowOption>> {
        let width = self.width;
        self.by_state
            .entry(state)
            .or_insert_with(|| {
                let mut out = Vec::new();
                let mut row = vec![0i8; width];
                fill_row(width, 0, 0, state, &mut row, &mut out);
                Arc::new(out)
            })
            .clone()
    }
}

fn fill_row(width: usize, j: usize, partial: u8, state: u32, row: &mut [i8], out: &mut Vec<RowOption>) {
    if j == width {
        if partial == 1 {
            out.push(RowOption {
                entries: row.to_vec(),
                next_state: state,
            });
        }
        return;
    }
    let bit = 1u32 << j;
    row[j] = 0;
    fill_row(width, j + 1, partial, state, row, out);
    if partial == 0 && state & bit == 0 {
        row[j] = 1;
        fill_row(width, j + 1, 1, state | bit, row, out);
    } else if partial == 1 && state & bit != 0 {
        row[j] = -1;
        fill_row(width, j + 1, 0, state & !bit, row, out);
    }
    row[j] = 0;
}

#[derive(Debug, Clone, Copy)]
struct Frame {
    state: u32,
    next: usize,
    end: usize,
}

/// Depth-first generator of `height` stacked rows of width `width`, each row
/// alternating in sign and every column partial sum in `{0, 1}`.
///
/// With `height == width` this yields exactly the ASMs of that order. The
/// generator holds one frame per row, so memory is linear in the height.
#[derive(Debug)]
pub struct PartialAsmIter {
    width: usize,
    height: usize,
    table: RowTable,
    stack: Vec<Frame>,
    chosen: Vec<(u32, usize)>,
    accept: fn(u32, usize) -> bool,
}

fn accept_any(_: u32, _: usize) -> bool {
    true
}

/// Top halves that close up under a half turn: column `j` and its mirror must
/// carry complementary partial sums at the seam.
fn accept_half_turn_seam(state: u32, width: usize) -> bool {
    (0..width).all(|j| ((state >> j) & 1) + ((state >> (width - 1 - j)) & 1) == 1)
}

impl PartialAsmIter {
    fn new(width: usize, height: usize, accept: fn(u32, usize) -> bool) -> Self {
        let mut table = RowTable::new(width);
        let first = table.rows_for(0).len();
        PartialAsmIter {
            width,
            height,
            table,
            stack: vec![Frame {
                state: 0,
                next: 0,
                end: first,
            }],
            chosen: Vec::with_capacity(height),
            accept,
        }
    }

    /// Restricts the first row to its `k`-th option; for a fresh column state
    /// that is the row with its one in column `k`.
    fn with_first_choice(mut self, k: usize) -> Self {
        let frame = &mut self.stack[0];
        frame.next = k.min(frame.end);
        frame.end = (k + 1).min(frame.end);
        self
    }

    fn emit(&mut self) -> Vec<i8> {
        let mut out = Vec::with_capacity(self.width * self.height);
        for &(state, choice) in &self.chosen {
            out.extend_from_slice(&self.table.rows_for(state)[choice].entries);
        }
        out
    }
}

impl Iterator for PartialAsmIter {
    type Item = Vec<i8>;

    fn next(&mut self) -> Option<Vec<i8>> {
        loop {
            let depth = self.stack.len();
            let frame = self.stack.last_mut()?;
            if frame.next >= frame.end {
                self.stack.pop();
                continue;
            }
            let state = frame.state;
            let choice = frame.next;
            frame.next += 1;
            let options = self.table.rows_for(state);
            let next_state = options[choice].next_state;
            self.chosen.truncate(depth - 1);
            self.chosen.push((state, choice));
            if depth == self.height {
                if (self.accept)(next_state, self.width) {
                    return Some(self.emit());
                }
                continue;
            }
            let end = self.table.rows_for(next_state).len();
            self.stack.push(Frame {
                state: next_state,
                next: 0,
                end,
            });
        }
    }
}

/// Stream of all ASMs of order `n`.
pub struct AsmIter {
    n: usize,
    inner: PartialAsmIter,
}

impl Iterator for AsmIter {
    type Item = Asm;
    fn next(&mut self) -> Option<Asm> {
        self.inner.next().map(|entries| Asm { n: self.n, entries })
    }
}

fn check_cap(order: usize, cap: usize) -> Result<()> {
    if order > cap {
        return Err(Error::OrderTooLarge { order, cap });
    }
    if order > 30 {
        // column state is a u32 bitmask
        return Err(Error::OrderTooLarge { order, cap: 30 });
    }
    Ok(())
}

pub fn generate_asms(n: usize, cap: usize) -> Result<AsmIter> {
    check_cap(n, cap)?;
    if n == 0 {
        return Err(Error::OutOfRange("order must be positive".into()));
    }
    Ok(AsmIter {
        n,
        inner: PartialAsmIter::new(n, n, accept_any),
    })
}

/// ASMs of order `n` whose first row has its one in column `k` (0-based).
///
/// The `n` branches partition the full stream, which is what parallel
/// consumers split on.
pub fn generate_asms_with_first_one(n: usize, k: usize, cap: usize) -> Result<AsmIter> {
    check_cap(n, cap)?;
    if k >= n {
        return Err(Error::OutOfRange(format!("first-row column {k} >= order {n}")));
    }
    Ok(AsmIter {
        n,
        inner: PartialAsmIter::new(n, n, accept_any).with_first_choice(k),
    })
}

/// Stream of half-turn symmetric ASMs of even order.
pub struct HalfTurnIter {
    order: usize,
    inner: PartialAsmIter,
}

impl Iterator for HalfTurnIter {
    type Item = Asm;
    fn next(&mut self) -> Option<Asm> {
        let top = self.inner.next()?;
        let n = self.order;
        let mut entries = top;
        entries.resize(n * n, 0);
        for i in n / 2..n {
            for j in 0..n {
                entries[i * n + j] = entries[(n - 1 - i) * n + (n - 1 - j)];
            }
        }
        Some(Asm { n, entries })
    }
}

/// Half-turn symmetric ASMs of even `order`, built from their top halves.
///
/// Only the upper `order/2` rows are enumerated; the lower half is the
/// rotated copy, and the two glue into an ASM exactly when each column's
/// partial sum at the seam is complementary to its mirror column's.
pub fn generate_half_turn_asms(order: usize, cap: usize) -> Result<HalfTurnIter> {
    check_cap(order, cap)?;
    if order == 0 || order % 2 == 1 {
        return Err(Error::OddOrderForHalfTurn(order));
    }
    Ok(HalfTurnIter {
        order,
        inner: PartialAsmIter::new(order, order / 2, accept_half_turn_seam),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    /// Exhaustive search over all `3^(n²)` matrices, checking the definition.
    fn asms_by_definition(n: usize) -> HashSet<Vec<i8>> {
        let cells = n * n;
        let total = 3usize.pow(cells as u32);
        let mut out = HashSet::new();
        for code in 0..total {
            let mut c = code;
            let entries: Vec<i8> = (0..cells)
                .map(|_| {
                    let d = (c % 3) as i8 - 1;
                    c /= 3;
                    d
                })
                .collect();
            if Asm::new(n, entries.clone()).is_ok() {
                out.insert(entries);
            }
        }
        out
    }

    #[test]
    fn generator_matches_definition_for_small_orders() {
        for n in 1..=3 {
            let generated: Vec<Vec<i8>> = generate_asms(n, 7)
                .unwrap()
                .map(|a| a.entries().to_vec())
                .collect();
            let unique: HashSet<Vec<i8>> = generated.iter().cloned().collect();
            assert_eq!(unique.len(), generated.len(), "duplicates at n={n}");
            assert_eq!(unique, asms_by_definition(n), "n={n}");
        }
    }

    #[test]
    fn order_one_and_three() {
        let one: Vec<Asm> = generate_asms(1, 7).unwrap().collect();
        assert_eq!(one, vec![Asm::identity(1)]);
        let three: Vec<Asm> = generate_asms(3, 7).unwrap().collect();
        assert_eq!(three.len(), 7);
        assert_eq!(three.iter().filter(|a| a.count_negative() == 1).count(), 1);
    }

    #[test]
    fn counts_through_order_six() {
        let expected = [1usize, 2, 7, 42, 429, 7436];
        for (n, &e) in (1..=6).zip(expected.iter()) {
            assert_eq!(generate_asms(n, 7).unwrap().count(), e, "n={n}");
        }
    }

    #[test]
    fn first_row_branches_partition_the_stream() {
        let n = 5;
        let total: usize = (0..n)
            .map(|k| generate_asms_with_first_one(n, k, 7).unwrap().count())
            .sum();
        assert_eq!(total, 429);
        for a in generate_asms_with_first_one(n, 2, 7).unwrap() {
            assert_eq!(a.get(0, 2), 1);
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            generate_asms(8, 7),
            Err(Error::OrderTooLarge { order: 8, cap: 7 })
        ));
        assert!(matches!(
            generate_half_turn_asms(5, 8),
            Err(Error::OddOrderForHalfTurn(5))
        ));
    }

    #[test]
    fn half_turn_symmetry_predicate() {
        assert!(Asm::identity(2).is_half_turn_symmetric());
        assert!(Asm::from_permutation(&[1, 0]).unwrap().is_half_turn_symmetric());
        assert!(!Asm::from_permutation(&[0, 2, 1]).unwrap().is_half_turn_symmetric());
    }

    #[test]
    fn seam_construction_matches_filtering() {
        for order in [2usize, 4, 6] {
            let filtered: HashSet<Asm> = generate_asms(order, 7)
                .unwrap()
                .filter(Asm::is_half_turn_symmetric)
                .collect();
            let built: Vec<Asm> = generate_half_turn_asms(order, 8).unwrap().collect();
            let built_set: HashSet<Asm> = built.iter().cloned().collect();
            assert_eq!(built.len(), built_set.len());
            assert_eq!(built_set, filtered, "order {order}");
            for a in &built {
                assert!(Asm::new(order, a.entries().to_vec()).is_ok());
            }
        }
    }

    #[test]
    fn invalid_matrices_are_rejected() {
        assert!(Asm::from_rows(&[vec![1, 1], vec![0, 0]]).is_err());
        assert!(Asm::from_rows(&[vec![0, 1, 0], vec![1, -1, 1], vec![0, 1, 0]]).is_ok());
        assert!(Asm::from_rows(&[vec![-1, 1, 1], vec![1, 0, 0], vec![1, 0, 0]]).is_err());
        assert!(Asm::new(2, vec![1, 0, 0]).is_err());
    }
}
