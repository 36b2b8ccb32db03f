//! Elements of the lamplighter group `Z/2 wr Z` and the generator actions.
//!
//! An element is stored in its geometric form: the finite set of lit lamps on
//! the integer line together with the position of the lamplighter (cursor).
//! The group law is the semidirect product law
//! `(A, p) * (B, q) = (A xor (B + p), p + q)`.

use std::cmp::Ordering;
use std::fmt;

/// Lamp position or cursor position on the integer line.
pub type Position = i64;

/// A lamplighter group element: lit lamps plus cursor.
///
/// Lamps are kept sorted ascending and duplicate-free, so derived equality and
/// hashing are value semantics.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Configuration {
    lamps: Vec<Position>,
    cursor: Position,
}

/// One of the three generator moves of the Cayley graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorStep {
    /// The generator `a`: flip the lamp under the cursor.
    Toggle,
    /// The generator `t`: move the cursor one to the right.
    Right,
    /// `t^-1`.
    Left,
}

impl GeneratorStep {
    pub const ALL: [GeneratorStep; 3] = [GeneratorStep::Toggle, GeneratorStep::Right, GeneratorStep::Left];

    pub fn inverse(self) -> GeneratorStep {
        match self {
            GeneratorStep::Toggle => GeneratorStep::Toggle,
            GeneratorStep::Right => GeneratorStep::Left,
            GeneratorStep::Left => GeneratorStep::Right,
        }
    }

    /// The group element this generator denotes.
    pub fn element(self) -> Configuration {
        match self {
            GeneratorStep::Toggle => Configuration::from_sorted_unchecked(vec![0], 0),
            GeneratorStep::Right => Configuration::from_sorted_unchecked(Vec::new(), 1),
            GeneratorStep::Left => Configuration::from_sorted_unchecked(Vec::new(), -1),
        }
    }

    /// The generator that moves `from` to `to`, if they are adjacent.
    pub fn between(from: &Configuration, to: &Configuration) -> Option<GeneratorStep> {
        GeneratorStep::ALL.into_iter().find(|&s| apply_step(from, s) == *to)
    }
}

impl fmt::Display for GeneratorStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GeneratorStep::Toggle => "a",
            GeneratorStep::Right => "t",
            GeneratorStep::Left => "T",
        };
        f.write_str(s)
    }
}

impl Configuration {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Builds a configuration from any lamp list; duplicates cancel in pairs
    /// (each listed lamp is one toggle).
    pub fn new(lamps: impl IntoIterator<Item = Position>, cursor: Position) -> Self {
        let mut v: Vec<Position> = lamps.into_iter().collect();
        v.sort_unstable();
        let mut out: Vec<Position> = Vec::with_capacity(v.len());
        for p in v {
            if out.last() == Some(&p) {
                out.pop();
            } else {
                out.push(p);
            }
        }
        Self { lamps: out, cursor }
    }

    /// Caller guarantees `lamps` is strictly ascending.
    pub(crate) fn from_sorted_unchecked(lamps: Vec<Position>, cursor: Position) -> Self {
        debug_assert!(lamps.windows(2).all(|w| w[0] < w[1]));
        Self { lamps, cursor }
    }

    /// Strictly ascending lamps, or `None`.
    pub fn from_sorted(lamps: Vec<Position>, cursor: Position) -> Option<Self> {
        lamps
            .windows(2)
            .all(|w| w[0] < w[1])
            .then_some(Self { lamps, cursor })
    }

    /// Pure translation `t^cursor`.
    pub fn translation(cursor: Position) -> Self {
        Self { lamps: Vec::new(), cursor }
    }

    pub fn lamps(&self) -> &[Position] {
        &self.lamps
    }

    pub fn cursor(&self) -> Position {
        self.cursor
    }

    pub fn is_identity(&self) -> bool {
        self.cursor == 0 && self.lamps.is_empty()
    }

    /// Lamp state at position `k`.
    pub fn lamp(&self, k: Position) -> bool {
        self.lamps.binary_search(&k).is_ok()
    }

    pub fn lit_count(&self) -> usize {
        self.lamps.len()
    }

    pub(crate) fn toggle_in_place(&mut self, k: Position) {
        match self.lamps.binary_search(&k) {
            Ok(i) => {
                self.lamps.remove(i);
            }
            Err(i) => self.lamps.insert(i, k),
        }
    }

    pub(crate) fn step_in_place(&mut self, s: GeneratorStep) {
        match s {
            GeneratorStep::Toggle => self.toggle_in_place(self.cursor),
            GeneratorStep::Right => self.cursor += 1,
            GeneratorStep::Left => self.cursor -= 1,
        }
    }

    /// Reflection `x -> axis - x` of lamps and cursor.
    pub fn reflect(&self, axis: Position) -> Self {
        let lamps = self.lamps.iter().rev().map(|&p| axis - p).collect();
        Self::from_sorted_unchecked(lamps, axis - self.cursor)
    }
}

impl fmt::Debug for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {})", self.lamps, self.cursor)
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::codec::encode(self))
    }
}

/// Total order used for reproducible reports: cursor first, then lamp lists
/// lexicographically.
impl Ord for Configuration {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cursor.cmp(&other.cursor).then_with(|| self.lamps.cmp(&other.lamps))
    }
}

impl PartialOrd for Configuration {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn apply_step(c: &Configuration, s: GeneratorStep) -> Configuration {
    let mut out = c.clone();
    out.step_in_place(s);
    out
}

/// Merge of two sorted lamp lists under symmetric difference, with the second
/// list shifted by `shift`.
pub(crate) fn xor_shifted(a: &[Position], b: &[Position], shift: Position) -> Vec<Position> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let y = b[j] + shift;
        match a[i].cmp(&y) {
            Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                out.push(y);
                j += 1;
            }
            Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend(b[j..].iter().map(|&y| y + shift));
    out
}

/// The group product `g * h`.
pub fn compose(g: &Configuration, h: &Configuration) -> Configuration {
    Configuration::from_sorted_unchecked(xor_shifted(&g.lamps, &h.lamps, g.cursor), g.cursor + h.cursor)
}

pub fn invert(g: &Configuration) -> Configuration {
    let lamps = g.lamps.iter().map(|&p| p - g.cursor).collect();
    Configuration::from_sorted_unchecked(lamps, -g.cursor)
}

/// The dyadic integers read off the non-negative side (`plus`, bit `p` for
/// lamp `p`) and the negative side (`minus`, bit `-p-1` for lamp `p`).
///
/// Returns `None` if a lamp lies beyond bit 127 on either side.
pub fn dyadic_views(c: &Configuration) -> Option<(u128, u128)> {
    let mut plus = 0u128;
    let mut minus = 0u128;
    for &p in &c.lamps {
        if p >= 0 {
            plus |= 1u128.checked_shl(u32::try_from(p).ok()?)?;
        } else {
            minus |= 1u128.checked_shl(u32::try_from(-p - 1).ok()?)?;
        }
    }
    Some((plus, minus))
}

#[cfg(test)]
mod tests {
    use super::*;
    use GeneratorStep::*;

    fn cfg(l: &[i64], c: i64) -> Configuration {
        Configuration::new(l.iter().copied(), c)
    }

    #[test]
    fn generator_actions() {
        let e = Configuration::identity();
        assert_eq!(apply_step(&e, Toggle), cfg(&[0], 0));
        assert_eq!(apply_step(&cfg(&[0], 0), Toggle), e);
        assert_eq!(apply_step(&e, Right), cfg(&[], 1));
    }

    #[test]
    fn compose_examples() {
        let x = cfg(&[-3, 4], 2);
        assert_eq!(compose(&x, &Configuration::identity()), x);
        // t then a, applied stepwise
        let word = apply_step(&apply_step(&Configuration::identity(), Right), Toggle);
        assert_eq!(compose(&cfg(&[], 1), &cfg(&[0], 0)), word);
        assert_eq!(word, cfg(&[1], 1));
        assert_eq!(compose(&cfg(&[0], 0), &cfg(&[0], 0)), Configuration::identity());
    }

    #[test]
    fn invert_examples() {
        assert_eq!(invert(&Configuration::identity()), Configuration::identity());
        assert_eq!(invert(&cfg(&[], 3)), cfg(&[], -3));
        let g = cfg(&[1], 1);
        assert_eq!(invert(&g), cfg(&[0], -1));
        assert!(compose(&g, &invert(&g)).is_identity());
    }

    #[test]
    fn dyadic_view_examples() {
        // lamps at -2, 1, 2 with the origin between -1 and 0
        assert_eq!(dyadic_views(&cfg(&[-2, 1, 2], 0)), Some((6, 2)));
        assert_eq!(dyadic_views(&cfg(&[], 5)), Some((0, 0)));
        assert_eq!(dyadic_views(&cfg(&[0], 0)), Some((1, 0)));
        assert_eq!(dyadic_views(&cfg(&[200], 0)), None);
    }

    #[test]
    fn new_cancels_pairs() {
        assert_eq!(cfg(&[2, 1, 2, 2], 0), cfg(&[1, 2], 0));
        assert!(Configuration::from_sorted(vec![1, 1], 0).is_none());
        assert!(Configuration::from_sorted(vec![2, 1], 0).is_none());
    }

    #[test]
    fn reflection() {
        assert_eq!(cfg(&[0, 1], 0).reflect(4), cfg(&[3, 4], 4));
    }
}
