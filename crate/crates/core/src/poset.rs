//! Finite posets with a precomputed level partition.
//!
//! Elements are addressed by their index in the label list passed to
//! [`Poset::new`]. Every derived structure (levels, down-sets, induced
//! subposets) preserves that input order within a level, so results are
//! deterministic and independent of hashing.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Characters that may not appear in an element label.
pub const RESERVED_LABEL_CHARS: &[char] = &['<', ':', ';', '=', '#'];

/// Label of the top element adjoined by [`Poset::enlarge`].
pub const ENLARGEMENT_LABEL: &str = "0";

/// A validated element label.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(String);

impl ElementId {
    pub fn new(label: impl Into<String>) -> Result<Self> {
        let label = label.into();
        if label.is_empty()
            || label
                .chars()
                .any(|c| c.is_whitespace() || RESERVED_LABEL_CHARS.contains(&c))
        {
            return Err(Error::InvalidLabel(label));
        }
        Ok(ElementId(label))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl std::borrow::Borrow<str> for ElementId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A finite partially ordered set.
///
/// The strict order is stored transitively closed as a dense boolean
/// matrix. Levels follow the unique partition `T_h ⊔ … ⊔ T_1` in which
/// every relation climbs to a strictly higher level and every element of a
/// lower level sits below some element of each higher level.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<ElementId>,
    index: HashMap<ElementId, usize>,
    lt: Vec<bool>,
    height: usize,
    level_of: Vec<usize>,
    level_order: Vec<usize>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Poset")
            .field("labels", &self.labels)
            .field("covers", &self.hasse_covers())
            .field("height", &self.height)
            .finish()
    }
}

impl Poset {
    /// Builds a poset from labels and strict relations `(a, b)` meaning
    /// `a < b`. The relations need not be covers; they are closed
    /// transitively.
    pub fn new<L, R, A, B>(labels: L, relations: R) -> Result<Self>
    where
        L: IntoIterator,
        L::Item: Into<String>,
        R: IntoIterator<Item = (A, B)>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let labels = labels
            .into_iter()
            .map(ElementId::new)
            .collect::<Result<Vec<_>>>()?;
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.to_string()));
            }
        }
        let n = labels.len();
        let mut lt = vec![false; n * n];
        for (a, b) in relations {
            let lookup = |s: &str| {
                index
                    .get(s)
                    .copied()
                    .ok_or_else(|| Error::UnknownLabel(s.to_string()))
            };
            let (i, j) = (lookup(a.as_ref())?, lookup(b.as_ref())?);
            lt[i * n + j] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if lt[i * n + k] {
                    for j in 0..n {
                        if lt[k * n + j] {
                            lt[i * n + j] = true;
                        }
                    }
                }
            }
        }
        if let Some(i) = (0..n).find(|&i| lt[i * n + i]) {
            return Err(Error::CycleDetected(labels[i].to_string()));
        }
        Ok(Self::from_closed(labels, index, lt))
    }

    /// The poset with no elements (height 0).
    pub fn empty() -> Self {
        Self::from_closed(Vec::new(), HashMap::new(), Vec::new())
    }

    /// An antichain on the given labels.
    pub fn antichain<L>(labels: L) -> Result<Self>
    where
        L: IntoIterator,
        L::Item: Into<String>,
    {
        Self::new(labels, std::iter::empty::<(&str, &str)>())
    }

    /// A chain `l_1 < l_2 < …` in the given order.
    pub fn chain<L>(labels: L) -> Result<Self>
    where
        L: IntoIterator,
        L::Item: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let rel: Vec<(String, String)> = labels
            .windows(2)
            .map(|w| (w[0].clone(), w[1].clone()))
            .collect();
        Self::new(labels, rel)
    }

    /// `lt` must be irreflexive, acyclic and transitively closed.
    fn from_closed(
        labels: Vec<ElementId>,
        index: HashMap<ElementId, usize>,
        lt: Vec<bool>,
    ) -> Self {
        let n = labels.len();
        // |D_s| strictly increases along the order, so sorting by it gives a
        // linear extension.
        let mut by_down: Vec<usize> = (0..n).collect();
        by_down.sort_by_key(|&s| (0..n).filter(|&t| lt[t * n + s]).count());
        let mut up_height = vec![1usize; n];
        for &s in by_down.iter().rev() {
            up_height[s] = 1
                + (0..n)
                    .filter(|&t| lt[s * n + t])
                    .map(|t| up_height[t])
                    .max()
                    .unwrap_or(0);
        }
        let height = up_height.iter().copied().max().unwrap_or(0);
        let level_of: Vec<usize> = up_height.iter().map(|&u| height - u + 1).collect();
        let mut level_order: Vec<usize> = (0..n).collect();
        level_order.sort_by_key(|&s| (std::cmp::Reverse(level_of[s]), s));
        Poset {
            labels,
            index,
            lt,
            height,
            level_of,
            level_order,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[ElementId] {
        &self.labels
    }

    pub fn label(&self, s: usize) -> &str {
        self.labels[s].as_str()
    }

    /// Index of the element with the given label.
    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Indices for a list of labels, in the order given.
    pub fn indices_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>> {
        labels.iter().map(|l| self.index_of(l.as_ref())).collect()
    }

    /// `s ≺ t`.
    pub fn lt(&self, s: usize, t: usize) -> bool {
        self.lt[s * self.len() + t]
    }

    /// `s ⪯ t`.
    pub fn le(&self, s: usize, t: usize) -> bool {
        s == t || self.lt(s, t)
    }

    /// All pairs `(s, t)` with `s ≺ t`, sorted.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|s| (0..n).map(move |t| (s, t)))
            .filter(|&(s, t)| self.lt(s, t))
            .collect()
    }

    /// Length of the longest chain; 0 for the empty poset.
    pub fn height(&self) -> usize {
        self.height
    }

    /// Level index in `[1, height]`.
    pub fn level_of(&self, s: usize) -> usize {
        self.level_of[s]
    }

    /// Elements ordered `T_h` first down to `T_1`, input order inside a level.
    /// Every matrix and vector in this crate is laid out in this order.
    pub fn level_order(&self) -> &[usize] {
        &self.level_order
    }

    /// The level sets `[T_h, …, T_1]`.
    pub fn level_partition(&self) -> Vec<Vec<usize>> {
        let mut levels = vec![Vec::new(); self.height];
        for &s in &self.level_order {
            levels[self.height - self.level_of[s]].push(s);
        }
        levels
    }

    /// `T_i` for `i` in `[1, height]`.
    pub fn level(&self, i: usize) -> Vec<usize> {
        self.level_order
            .iter()
            .copied()
            .filter(|&s| self.level_of[s] == i)
            .collect()
    }

    /// Strict predecessors `D_s = {t | t ≺ s}`, in input order.
    pub fn down_set(&self, s: usize) -> Vec<usize> {
        (0..self.len()).filter(|&t| self.lt(t, s)).collect()
    }

    /// Strict successors of `s`, in input order.
    pub fn up_set(&self, s: usize) -> Vec<usize> {
        (0..self.len()).filter(|&t| self.lt(s, t)).collect()
    }

    pub fn is_maximal(&self, s: usize) -> bool {
        (0..self.len()).all(|t| !self.lt(s, t))
    }

    pub fn is_minimal(&self, s: usize) -> bool {
        (0..self.len()).all(|t| !self.lt(t, s))
    }

    /// Maximal elements, in level order (which is input order, since they
    /// all lie in `T_h`).
    pub fn maximal_elements(&self) -> Vec<usize> {
        self.level_order
            .iter()
            .copied()
            .filter(|&s| self.is_maximal(s))
            .collect()
    }

    /// `P⁰`: adjoins a top element labelled `0` as the first element.
    pub fn enlarge(&self) -> Result<Poset> {
        if self.index.contains_key(ENLARGEMENT_LABEL) {
            return Err(Error::LabelCollision(ENLARGEMENT_LABEL.to_string()));
        }
        let labels = std::iter::once(ENLARGEMENT_LABEL.to_string())
            .chain(self.labels.iter().map(|l| l.to_string()));
        let mut rel: Vec<(String, String)> = self
            .relations()
            .into_iter()
            .map(|(s, t)| (self.label(s).to_string(), self.label(t).to_string()))
            .collect();
        rel.extend(
            self.labels
                .iter()
                .map(|l| (l.to_string(), ENLARGEMENT_LABEL.to_string())),
        );
        Poset::new(labels, rel)
    }

    /// Induced subposet on `elements` (indices into `self`). Element order
    /// follows the input order of `self`; duplicates are ignored.
    pub fn induced_subposet(&self, elements: &[usize]) -> Poset {
        let n = self.len();
        let mut keep = vec![false; n];
        for &s in elements {
            keep[s] = true;
        }
        let kept: Vec<usize> = (0..n).filter(|&s| keep[s]).collect();
        let m = kept.len();
        let labels: Vec<ElementId> = kept.iter().map(|&s| self.labels[s].clone()).collect();
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        let mut lt = vec![false; m * m];
        for (i, &s) in kept.iter().enumerate() {
            for (j, &t) in kept.iter().enumerate() {
                lt[i * m + j] = self.lt(s, t);
            }
        }
        Poset::from_closed(labels, index, lt)
    }

    /// Induced subposet on a set of labels.
    pub fn induced_by_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Poset> {
        Ok(self.induced_subposet(&self.indices_of(labels)?))
    }

    /// `P ∖ {x}` with the induced order.
    pub fn remove_element(&self, x: usize) -> Poset {
        let rest: Vec<usize> = (0..self.len()).filter(|&s| s != x).collect();
        self.induced_subposet(&rest)
    }

    /// Cover relations `(s, t)`: `s ≺ t` with nothing strictly between.
    pub fn hasse_covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        self.relations()
            .into_iter()
            .filter(|&(s, t)| !(0..n).any(|u| self.lt(s, u) && self.lt(u, t)))
            .collect()
    }

    /// Maps each index of `sub` (an induced subposet of `self`) to the
    /// corresponding index in `self`.
    pub fn embedding_of(&self, sub: &Poset) -> Result<Vec<usize>> {
        sub.labels
            .iter()
            .map(|l| self.index_of(l.as_str()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn three_level() -> Poset {
        Poset::new(
            ["1", "2", "3", "4", "5", "6", "7"],
            [
                ("1", "3"),
                ("1", "4"),
                ("1", "5"),
                ("2", "4"),
                ("2", "5"),
                ("3", "6"),
                ("3", "7"),
                ("4", "6"),
                ("4", "7"),
                ("5", "7"),
            ],
        )
        .unwrap()
    }

    fn labels_of(p: &Poset, set: &[usize]) -> Vec<String> {
        set.iter().map(|&s| p.label(s).to_string()).collect()
    }

    #[test]
    fn three_level_levels() {
        let p = three_level();
        assert_eq!(p.height(), 3);
        let levels: Vec<Vec<String>> = p
            .level_partition()
            .iter()
            .map(|l| labels_of(&p, l))
            .collect();
        assert_eq!(
            levels,
            vec![vec!["6", "7"], vec!["3", "4", "5"], vec!["1", "2"]]
        );
        assert_eq!(labels_of(&p, &p.maximal_elements()), vec!["6", "7"]);
        let six = p.index_of("6").unwrap();
        assert_eq!(labels_of(&p, &p.down_set(six)), vec!["1", "2", "3", "4"]);
        assert!(p.down_set(p.index_of("1").unwrap()).is_empty());
    }

    #[test]
    fn singleton_and_antichain() {
        let p = Poset::antichain(["x"]).unwrap();
        assert_eq!(p.height(), 1);
        assert_eq!(p.level_partition(), vec![vec![0]]);
        let a = Poset::antichain(["a", "b", "c"]).unwrap();
        assert_eq!(a.height(), 1);
        assert_eq!(a.level_partition(), vec![vec![0, 1, 2]]);
        assert_eq!(a.maximal_elements(), vec![0, 1, 2]);
        assert!(a.hasse_covers().is_empty());
    }

    #[test]
    fn chain_structure() {
        let c = Poset::chain(["a", "b", "c"]).unwrap();
        assert_eq!(c.height(), 3);
        assert_eq!(c.level_partition(), vec![vec![2], vec![1], vec![0]]);
        assert_eq!(c.down_set(2), vec![0, 1]);
        assert_eq!(c.maximal_elements(), vec![2]);
        assert_eq!(c.hasse_covers(), vec![(0, 1), (1, 2)]);
        let r = c.remove_element(1);
        assert_eq!(labels_of(&r, &[0, 1]), vec!["a", "c"]);
        assert!(r.lt(0, 1));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            Poset::new(["a", "b"], [("a", "b"), ("b", "a")]).unwrap_err(),
            Error::CycleDetected("a".into())
        );
        assert_eq!(
            Poset::new(["a", "a"], std::iter::empty::<(&str, &str)>()).unwrap_err(),
            Error::DuplicateLabel("a".into())
        );
        assert_eq!(
            Poset::new(["a"], [("a", "z")]).unwrap_err(),
            Error::UnknownLabel("z".into())
        );
        assert!(matches!(
            Poset::antichain(["a b"]).unwrap_err(),
            Error::InvalidLabel(_)
        ));
        assert!(matches!(
            Poset::antichain(["a:1"]).unwrap_err(),
            Error::InvalidLabel(_)
        ));
    }

    #[test]
    fn enlargement() {
        let p = Poset::antichain(["x"]).unwrap().enlarge().unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.label(0), "0");
        assert!(p.lt(1, 0));
        assert_eq!(p.height(), 2);

        let e = three_level().enlarge().unwrap();
        assert_eq!(e.len(), 8);
        assert_eq!(e.height(), 4);
        assert_eq!(e.maximal_elements(), vec![0]);
        assert!((1..8).all(|s| e.lt(s, 0)));

        let z = Poset::empty().enlarge().unwrap();
        assert_eq!(z.len(), 1);
        assert_eq!(z.height(), 1);

        let taken = Poset::antichain(["0"]).unwrap();
        assert_eq!(
            taken.enlarge().unwrap_err(),
            Error::LabelCollision("0".into())
        );
    }

    #[test]
    fn removal_and_induced() {
        let p = three_level();
        let without6 = p.remove_element(p.index_of("6").unwrap());
        assert_eq!(without6.len(), 6);
        assert_eq!(without6.height(), 3);
        let covers: Vec<(String, String)> = without6
            .hasse_covers()
            .into_iter()
            .map(|(s, t)| (without6.label(s).into(), without6.label(t).into()))
            .collect();
        let expect: Vec<(String, String)> = [
            ("1", "3"),
            ("1", "4"),
            ("1", "5"),
            ("2", "4"),
            ("2", "5"),
            ("3", "7"),
            ("4", "7"),
            ("5", "7"),
        ]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
        assert_eq!(covers, expect);

        let d6 = p.induced_by_labels(&["1", "2", "3", "4"]).unwrap();
        let rel: Vec<(String, String)> = d6
            .relations()
            .into_iter()
            .map(|(s, t)| (d6.label(s).into(), d6.label(t).into()))
            .collect();
        assert_eq!(
            rel,
            vec![
                ("1".to_string(), "3".to_string()),
                ("1".into(), "4".into()),
                ("2".into(), "4".into())
            ]
        );
        assert!(p.induced_subposet(&[]).is_empty());
        assert_eq!(p.induced_subposet(&(0..7).collect::<Vec<_>>()), p);

        let single = Poset::antichain(["x"]).unwrap().remove_element(0);
        assert!(single.is_empty());
        assert_eq!(single.height(), 0);
        assert!(single.level_partition().is_empty());
    }

    #[test]
    fn three_level_covers_are_listed_relations() {
        let p = three_level();
        assert_eq!(p.hasse_covers().len(), 10);
        assert_eq!(p.relations().len(), 10 + 4);
    }
}
