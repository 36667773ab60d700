//! Vertex labels and flattened label tuples.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use crate::CoreError;

/// A vertex label. Labels live in one global namespace: equal labels in two
/// base graphs name the same vertex.
pub type Label = u32;

/// A vertex of a factored graph, i.e. a tuple of labels.
///
/// Ordering is dimension-major, then lexicographic by label.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vertex(Vec<Label>);

impl Vertex {
    pub fn new(labels: Vec<Label>) -> Self {
        Vertex(labels)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.0
    }

    pub fn into_labels(self) -> Vec<Label> {
        self.0
    }
}

/// Dimension-major comparison of two label tuples.
pub fn vertex_order(u: &[Label], v: &[Label]) -> Ordering {
    u.len().cmp(&v.len()).then_with(|| u.cmp(v))
}

impl Ord for Vertex {
    fn cmp(&self, other: &Self) -> Ordering {
        vertex_order(&self.0, &other.0)
    }
}

impl PartialOrd for Vertex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Deref for Vertex {
    type Target = [Label];
    fn deref(&self) -> &[Label] {
        &self.0
    }
}

impl From<Vec<Label>> for Vertex {
    fn from(v: Vec<Label>) -> Self {
        Vertex(v)
    }
}

impl From<&[Label]> for Vertex {
    fn from(v: &[Label]) -> Self {
        Vertex(v.to_vec())
    }
}

/// Writes `[a,b,c]` without spaces.
pub fn write_tuple(f: &mut impl fmt::Write, labels: &[Label]) -> fmt::Result {
    f.write_char('[')?;
    for (i, l) in labels.iter().enumerate() {
        if i > 0 {
            f.write_char(',')?;
        }
        write!(f, "{l}")?;
    }
    f.write_char(']')
}

pub fn tuple_string(labels: &[Label]) -> String {
    let mut s = String::new();
    write_tuple(&mut s, labels).unwrap();
    s
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

impl FromStr for Vertex {
    type Err = CoreError;

    /// Accepts `[3,0,7]`; whitespace around labels is tolerated.
    fn from_str(s: &str) -> Result<Self, CoreError> {
        let bad = || CoreError::BadTuple(s.to_string());
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(bad)?;
        let labels = inner
            .split(',')
            .map(|p| p.trim().parse::<Label>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Vertex(labels))
    }
}
