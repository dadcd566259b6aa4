//! Inversions, the diagonal subtraction procedure, and the width-one and
//! width-two bijections between left Gog and left GOGAm trapezoids, with
//! full intermediate traces.

use std::collections::BTreeSet;
use std::fmt;

use crate::gog::{complete_left_gog_unchecked, is_left_gog_trapezoid};
use crate::gogam::is_left_gogam_n2;
use crate::pattern::{Cell, Pattern, Shape, ShapeKind};
use crate::{Error, Result};

fn expect_kind(p: &Pattern, kind: ShapeKind, what: &str) {
    assert!(
        p.shape().kind() == kind,
        "{what} expects a {} pattern, got {}",
        kind.token(),
        p.shape()
    );
}

/// A cell `(i, j)` whose entry equals the entry directly above it in its
/// column, `X_{i,j} = X_{i+1,j}`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Inversion {
    pub i: usize,
    pub j: usize,
}

impl fmt::Display for Inversion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

/// All inversions of a pattern, sorted by column `j` descending and row `i`
/// descending within a column.
pub fn inversions(p: &Pattern) -> Vec<Inversion> {
    let n = p.n();
    let mut out = Vec::new();
    for j in (1..=n).rev() {
        for i in (1..n).rev() {
            if let (Some(a), Some(b)) = (p.try_get(i, j), p.try_get(i + 1, j)) {
                if a == b {
                    out.push(Inversion { i, j });
                }
            }
        }
    }
    out
}

/// Union of the strict SE diagonals below every inversion: inversion
/// `(i, j)` covers the cells `(i + p, j + p)` for `1 <= p <= n - i`.
pub fn covered_cells(p: &Pattern) -> BTreeSet<Cell> {
    expect_kind(p, ShapeKind::Triangle, "covered_cells");
    let n = p.n();
    let mut out = BTreeSet::new();
    for inv in inversions(p) {
        for off in 1..=(n - inv.i) {
            out.insert(Cell::new(inv.i + off, inv.j + off));
        }
    }
    out
}

/// Diagonal subtraction sweep: for each of the `d` rightmost NW-SE
/// diagonals, right to left, scanning each diagonal NW to SE, every
/// inversion found in the live pattern subtracts 1 from all cells it
/// covers. Returns the resulting triangle and whether it is valid (no
/// entry fell below 1 and the result is GT-valid); entries that would fall
/// below 1 are clamped in the returned pattern rather than raised as an
/// error, which can only happen on non-Gog inputs.
pub fn standard_procedure(p: &Pattern, d: usize) -> (Pattern, bool) {
    expect_kind(p, ShapeKind::Triangle, "standard_procedure");
    let n = p.n();
    assert!(d >= 1 && d <= n, "need 1 <= d <= n, got d={d} n={n}");
    // 1-based grid; g[i][j] for j <= i
    let mut g = vec![vec![0i64; n + 1]; n + 1];
    for i in 1..=n {
        for j in 1..=i {
            g[i][j] = p.get(i, j) as i64;
        }
    }
    for j in ((n - d + 1)..=n).rev() {
        for i in (j..n).rev() {
            if g[i][j] == g[i + 1][j] {
                for off in 1..=(n - i) {
                    g[i + off][j + off] -= 1;
                }
            }
        }
    }
    let mut underflow = false;
    let rows = (1..=n)
        .rev()
        .map(|i| {
            (1..=i)
                .map(|j| {
                    if g[i][j] < 1 {
                        underflow = true;
                        1u32
                    } else {
                        g[i][j] as u32
                    }
                })
                .collect()
        })
        .collect();
    let out = Pattern::new(Shape::triangle(n).unwrap(), rows).unwrap();
    let valid = !underflow && out.is_gt_valid();
    (out, valid)
}

/// For a valid left Gog trapezoid of width `k`: running the subtraction
/// sweep over the `n - k + 1` rightmost diagonals of its canonical
/// completion yields a GT-valid triangle whose added diagonals replicate
/// column `k`, `Y_{i+l,k+l} = X_{i,k}`.
pub fn left_completion_invariance(t: &Pattern) -> bool {
    expect_kind(t, ShapeKind::LeftTrapezoid, "left_completion_invariance");
    if !is_left_gog_trapezoid(t) {
        return false;
    }
    let n = t.n();
    let k = t.shape().k().unwrap();
    let comp = complete_left_gog_unchecked(t);
    let (y, ok) = standard_procedure(&comp, n - k + 1);
    if !ok {
        return false;
    }
    for i in k..=n {
        for off in 1..=(n - i) {
            if y.get(i + off, k + off) != t.get(i, k) {
                return false;
            }
        }
    }
    true
}

/// Map orientation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Direction {
    GogToGogam,
    GogamToGog,
}

impl Direction {
    pub fn token(self) -> &'static str {
        match self {
            Direction::GogToGogam => "gog-to-gogam",
            Direction::GogamToGog => "gogam-to-gog",
        }
    }
}

/// One rewrite step: the inversion row it consumed, the pivot row bounding
/// the rewritten block, and the full intermediate pattern it produced.
#[derive(Clone, Debug)]
pub struct TraceStep {
    /// Index of the produced intermediate (`l` in `Y^{(l)}`).
    pub step: usize,
    pub inversion_row: usize,
    pub pivot: usize,
    pub pattern: Pattern,
}

/// Full record of a map application, retaining every intermediate.
#[derive(Clone, Debug)]
pub struct BijectionTrace {
    pub direction: Direction,
    pub steps: Vec<TraceStep>,
}

impl BijectionTrace {
    /// Text dump: each step emits a comment line then the pattern block.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            out.push_str(&format!(
                "# step l={} inv={} pivot={}\n",
                s.step, s.inversion_row, s.pivot
            ));
            out.push_str(&s.pattern.serialize());
        }
        out
    }
}

struct Cols {
    n: usize,
    c1: Vec<u32>, // rows 1..=n, slot 0 unused
    c2: Vec<u32>, // rows 2..=n, slots 0..=1 unused
}

impl Cols {
    fn from_pattern(p: &Pattern) -> Cols {
        let n = p.n();
        let mut c1 = vec![0; n + 1];
        let mut c2 = vec![0; n + 1];
        for i in 1..=n {
            c1[i] = p.get(i, 1);
            if i >= 2 {
                c2[i] = p.get(i, 2);
            }
        }
        Cols { n, c1, c2 }
    }

    fn to_pattern(&self) -> Pattern {
        let shape = Shape::left_trapezoid(self.n, 2).unwrap();
        let rows = (1..=self.n)
            .rev()
            .map(|i| if i >= 2 { vec![self.c1[i], self.c2[i]] } else { vec![self.c1[1]] })
            .collect();
        Pattern::new(shape, rows).unwrap()
    }
}

/// Rows `i` (descending) whose first-column entry repeats directly above,
/// `X_{i,1} = X_{i+1,1}`.
pub fn first_column_inversion_rows(p: &Pattern) -> Vec<usize> {
    (1..p.n()).rev().filter(|&i| p.get(i, 1) == p.get(i + 1, 1)).collect()
}

fn width_from_left(p: &Pattern, what: &str) -> Result<usize> {
    if p.shape().kind() != ShapeKind::LeftTrapezoid {
        return Err(Error::InvalidInput(format!(
            "{what} expects a left trapezoid, got {}",
            p.shape()
        )));
    }
    let k = p.shape().k().unwrap();
    if k > 2 {
        return Err(Error::InvalidInput(format!(
            "{what} is defined for widths 1 and 2 only, got k={k}"
        )));
    }
    Ok(k)
}

/// Width-one and width-two maps from left Gog trapezoids to left GOGAm
/// trapezoids. Width one is the identity. Width two processes the
/// first-column inversion rows `i_1 > i_2 > ...` north-west to south-east;
/// the step for `i_{l+1}` finds the pivot `m`, the largest row whose
/// second-column entry equals the one in row `i_{l+1} + 1`, shifts the
/// first column up by one on rows `i_{l+1} < i <= m - 1`, and decrements
/// the second column on rows `i_{l+1} + 1 <= i <= m`.
pub fn gog_to_gogam_left(t: &Pattern) -> Result<(Pattern, BijectionTrace)> {
    let k = width_from_left(t, "gog_to_gogam_left")?;
    if !is_left_gog_trapezoid(t) {
        return Err(Error::InvalidInput("input fails is_left_gog_trapezoid".into()));
    }
    let mut trace = BijectionTrace { direction: Direction::GogToGogam, steps: Vec::new() };
    if k == 1 {
        return Ok((t.clone(), trace));
    }
    let n = t.n();
    let mut cols = Cols::from_pattern(t);
    let inv_rows = first_column_inversion_rows(t);
    for (idx, &inv) in inv_rows.iter().enumerate() {
        let v = cols.c2[inv + 1];
        let m = (2..=n)
            .rev()
            .find(|&i| cols.c2[i] == v)
            .expect("pivot row exists: row inv+1 matches itself");
        for i in (inv + 1)..m {
            cols.c1[i] = cols.c1[i + 1];
        }
        for i in (inv + 1)..=m {
            if cols.c2[i] == 1 {
                return Err(Error::InvalidInput(
                    "entry would drop below 1; input is outside the map's domain".into(),
                ));
            }
            cols.c2[i] -= 1;
        }
        trace.steps.push(TraceStep {
            step: idx + 1,
            inversion_row: inv,
            pivot: m,
            pattern: cols.to_pattern(),
        });
    }
    let out = cols.to_pattern();
    if !is_left_gogam_n2(&out) {
        return Err(Error::InvalidInput("forward image fails is_left_gogam_n2".into()));
    }
    Ok((out, trace))
}

/// Inverse of [`gog_to_gogam_left`]. Width one is the identity. Width two
/// processes the first-column inversion rows of the input south-east to
/// north-west; the step for inversion row `r` finds the pivot `p`, the
/// smallest row whose second-column entry equals the one in row `r + 1`,
/// shifts the first column down by one on rows `p <= i <= r` (the shift
/// wins the overlap at `p`), and increments the second column on rows
/// `p <= i <= r + 1`.
pub fn gogam_to_gog_left(t: &Pattern) -> Result<(Pattern, BijectionTrace)> {
    let k = width_from_left(t, "gogam_to_gog_left")?;
    let mut trace = BijectionTrace { direction: Direction::GogamToGog, steps: Vec::new() };
    if k == 1 {
        if !is_left_gog_trapezoid(t) {
            return Err(Error::InvalidInput("input fails is_left_gog_trapezoid".into()));
        }
        return Ok((t.clone(), trace));
    }
    if !is_left_gogam_n2(t) {
        return Err(Error::InvalidInput("input fails is_left_gogam_n2".into()));
    }
    let n = t.n();
    let mut cols = Cols::from_pattern(t);
    let inv_rows = first_column_inversion_rows(t);
    for (idx, &inv) in inv_rows.iter().enumerate().rev() {
        let v = cols.c2[inv + 1];
        let piv =
            (2..=n).find(|&i| cols.c2[i] == v).expect("pivot row exists: row inv+1 matches itself");
        for i in (piv..=inv).rev() {
            cols.c1[i] = cols.c1[i - 1];
        }
        for i in piv..=(inv + 1) {
            cols.c2[i] += 1;
        }
        trace.steps.push(TraceStep {
            step: idx,
            inversion_row: inv,
            pivot: piv,
            pattern: cols.to_pattern(),
        });
    }
    let out = cols.to_pattern();
    if !is_left_gog_trapezoid(&out) {
        return Err(Error::InvalidInput("inverse image fails is_left_gog_trapezoid".into()));
    }
    Ok((out, trace))
}

/// Width-two map on rectangles, routed through the canonical left
/// trapezoid completions: fill with `X_{i,j} = j` for the Gog side, with 1
/// for the GOGAm side, apply the trapezoid map, and restrict back to the
/// rectangle.
pub fn rectangle_map_n2(r: &Pattern, direction: Direction) -> Result<Pattern> {
    if r.shape().kind() != ShapeKind::Rectangle {
        return Err(Error::InvalidInput(format!(
            "rectangle_map_n2 expects a rectangle, got {}",
            r.shape()
        )));
    }
    if r.shape().k() != Some(2) {
        return Err(Error::InvalidInput(format!(
            "rectangle_map_n2 is defined for width k = 2, got k={}",
            r.shape().k().unwrap()
        )));
    }
    let image = match direction {
        Direction::GogToGogam => {
            let trap = crate::gog::complete_rectangle_left_gog(r);
            if !is_left_gog_trapezoid(&trap) {
                return Err(Error::InvalidInput("input fails is_gog_rectangle".into()));
            }
            gog_to_gogam_left(&trap)?.0
        }
        Direction::GogamToGog => {
            let trap = crate::gogam::complete_rectangle_left_gogam(r);
            if !is_left_gogam_n2(&trap) {
                return Err(Error::InvalidInput("input fails is_gogam_rectangle".into()));
            }
            gogam_to_gog_left(&trap)?.0
        }
    };
    image.extract(r.shape())
}

/// Per-step induction facts for a forward trace on input `x`: each
/// intermediate is GT-valid, entrywise at most `x`, agrees with `x` on all
/// rows up to its inversion row, and satisfies the width-two membership
/// inequalities strictly below it.
pub fn forward_trace_invariants(
    x: &Pattern,
    trace: &BijectionTrace,
) -> std::result::Result<(), String> {
    if trace.direction != Direction::GogToGogam {
        return Err("not a forward trace".into());
    }
    let n = x.n();
    for s in &trace.steps {
        let z = &s.pattern;
        if !z.is_gt_valid() {
            return Err(format!("step {} not GT-valid", s.step));
        }
        if !z.leq(x).map_err(|e| e.to_string())? {
            return Err(format!("step {} exceeds the input somewhere", s.step));
        }
        for i in 1..=s.inversion_row {
            if z.get(i, 1) != x.get(i, 1) || (i >= 2 && z.get(i, 2) != x.get(i, 2)) {
                return Err(format!(
                    "step {} modified row {} at or below its inversion",
                    s.step, i
                ));
            }
        }
        for i in (s.inversion_row + 1).max(2)..=n {
            let c2 = z.get(i, 2) as i64;
            let bound = (n - i) as i64;
            if c2 > bound + 2 {
                return Err(format!("step {} violates the column bound in row {}", s.step, i));
            }
            if c2 - z.get(i - 1, 1) as i64 + z.get(i, 1) as i64 > bound + 1 {
                return Err(format!("step {} violates the slack bound in row {}", s.step, i));
            }
        }
    }
    Ok(())
}
