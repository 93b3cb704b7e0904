use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// A named symbol. Coordinates `x1, x2, ...` sort first by index, every
/// other name sorts alphabetically after them.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(name: &str) -> Self {
        Symbol(Arc::from(name))
    }

    /// The coordinate symbol `x<i>` (1-based).
    pub fn coord(i: usize) -> Self {
        Symbol::new(&format!("x{i}"))
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    /// Index of a coordinate symbol `x<i>`, if this is one.
    pub fn coord_index(&self) -> Option<usize> {
        let rest = self.0.strip_prefix('x')?;
        if rest.is_empty() || rest.starts_with('0') || !rest.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        rest.parse().ok()
    }
}

impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.coord_index(), other.coord_index()) {
            (Some(a), Some(b)) => a.cmp(&b),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => self.0.cmp(&other.0),
        }
    }
}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Symbol {
    fn from(s: &str) -> Self {
        Symbol::new(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinates_sort_numerically_before_names() {
        let mut v: Vec<Symbol> = ["beta", "x10", "alpha", "x2", "x1", "q"]
            .iter()
            .map(|s| Symbol::new(s))
            .collect();
        v.sort();
        let names: Vec<&str> = v.iter().map(|s| s.name()).collect();
        assert_eq!(names, ["x1", "x2", "x10", "alpha", "beta", "q"]);
    }

    #[test]
    fn plain_x_is_not_a_coordinate() {
        assert_eq!(Symbol::new("x").coord_index(), None);
        assert_eq!(Symbol::new("x0").coord_index(), None);
        assert_eq!(Symbol::new("x3").coord_index(), Some(3));
    }
}
