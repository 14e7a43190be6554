//! Bijective correspondences: psi/phi between labelled upper-diagonal trees
//! and permutations of the label set, fixed-point insertion between marked
//! one-tree permutations and two-tree permutations, and the pattern swap
//! between two-tree and three-tree permutations.

use thiserror::Error;

use crate::cnat::{cnat_count, Cnat, CnatError, Dot, LabelledCnat};
use crate::perm::{PermError, Permutation};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BijectionError {
    #[error(transparent)]
    Cnat(#[from] CnatError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("top row has {0} internal dots, need at least 2 to decompose")]
    TooFewTopRowDots(usize),
    #[error("top row has internal dots besides the root, cannot delete it")]
    TopRowNotRootOnly,
    #[error("both parts of a composition must have size at least 2")]
    PartTooSmall,
    #[error("label sets of the two parts overlap")]
    LabelsOverlap,
    #[error("minimum label of the right part must exceed every top-row label of the left part")]
    RootLabelOrder,
    #[error("new label {0} must be smaller than every existing label")]
    LabelNotMinimal(u32),
    #[error("word repeats the label {0}")]
    RepeatedLabel(u32),
    #[error("permutation has {found} trees, the map requires exactly {expected}")]
    WrongClass { expected: u64, found: u64 },
}

/// Result of a top-row decomposition: `left` keeps everything outside the
/// right-most top-row subtree, with a fresh leaf standing in for it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopRowSplit {
    pub left: LabelledCnat,
    pub right: LabelledCnat,
}

fn renormalize(dots: &[Dot], cols: &[u32], rows: &[u32]) -> Vec<Dot> {
    dots.iter()
        .map(|d| {
            let c = cols.binary_search(&d.col).expect("column survives") as u32 + 1;
            let r = rows.binary_search(&d.row).expect("row survives") as u32 + 1;
            Dot::new(c, r)
        })
        .collect()
}

impl LabelledCnat {
    /// Splits off the subtree rooted at the right-most internal dot of the top
    /// row. Requires at least two internal dots there.
    pub fn top_row_decomposition(&self) -> Result<TopRowSplit, BijectionError> {
        let tree = self.tree();
        let top_internal = tree.top_row_internal_cols();
        if top_internal.len() < 2 {
            return Err(BijectionError::TooFewTopRowDots(top_internal.len()));
        }
        let r = *top_internal.last().unwrap();
        let sub = tree.subtree_dots(Dot::new(r, 1));
        let mut sub_cols: Vec<u32> = sub.iter().map(|d| d.col).collect();
        sub_cols.sort_unstable();
        sub_cols.dedup();
        let mut sub_rows: Vec<u32> = sub.iter().map(|d| d.row).collect();
        sub_rows.sort_unstable();
        sub_rows.dedup();

        let right_dots = renormalize(&sub, &sub_cols, &sub_rows);
        let right_labels: Vec<u32> = sub_cols
            .iter()
            .filter(|&&c| c < self.size())
            .map(|&c| self.label_of_col(c))
            .collect();
        let right = LabelledCnat::new(
            Cnat::from_dots(sub_cols.len() as u32, right_dots)?,
            right_labels,
        )?;

        // Rows and columns split cleanly between the two subtrees, except the
        // top row, which both keep.
        let left_cols: Vec<u32> = (1..=self.size())
            .filter(|c| !sub_cols.contains(c))
            .collect();
        let mut left_rows: Vec<u32> = (2..=self.size())
            .filter(|r| !sub_rows.contains(r))
            .collect();
        left_rows.insert(0, 1);
        let kept: Vec<Dot> = tree
            .dots()
            .iter()
            .copied()
            .filter(|d| !sub.contains(d))
            .collect();
        let mut left_dots = renormalize(&kept, &left_cols, &left_rows);
        let left_size = left_cols.len() as u32 + 1;
        left_dots.push(Dot::new(left_size, 1)); // leaf standing in for the subtree
        let left_labels: Vec<u32> = left_cols.iter().map(|&c| self.label_of_col(c)).collect();
        let left = LabelledCnat::new(Cnat::from_dots(left_size, left_dots)?, left_labels)?;

        Ok(TopRowSplit { left, right })
    }

    /// Inverse of [`top_row_decomposition`](Self::top_row_decomposition):
    /// glues `right` onto the top-row leaf of `left`, interleaving columns so
    /// the merged labels stay increasing.
    pub fn compose(left: &LabelledCnat, right: &LabelledCnat) -> Result<LabelledCnat, BijectionError> {
        if left.size() < 2 || right.size() < 2 {
            return Err(BijectionError::PartTooSmall);
        }
        let mut labels: Vec<u32> = left.labels().iter().chain(right.labels()).copied().collect();
        labels.sort_unstable();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(BijectionError::LabelsOverlap);
        }
        let glue_label = right.labels()[0];
        let left_top_max = left
            .tree()
            .top_row_internal_cols()
            .into_iter()
            .map(|c| left.label_of_col(c))
            .max()
            .expect("trees of size >= 2 have an internal top-row dot");
        if glue_label < left_top_max {
            return Err(BijectionError::RootLabelOrder);
        }

        let rank = |label: u32| labels.binary_search(&label).unwrap() as u32 + 1;
        let n1 = labels.len() as u32 + 1; // size of the glued tree
        let a = left.size();
        let m = right.size();

        let col_left: Vec<u32> = (1..a).map(|j| rank(left.label_of_col(j))).collect();
        let mut col_right: Vec<u32> = (1..m).map(|j| rank(right.label_of_col(j))).collect();
        col_right.push(n1);

        // Rows follow from the decreasing leaf layout: the part's row i >= 2
        // holds the leaf of its column (size + 1 - i).
        let row_left: Vec<u32> = (1..=a)
            .map(|i| {
                if i == 1 {
                    1
                } else {
                    n1 + 1 - col_left[(a - i) as usize]
                }
            })
            .collect();
        let row_right: Vec<u32> = (1..=m)
            .map(|i| {
                if i == 1 {
                    1
                } else {
                    n1 + 1 - col_right[(m - i) as usize]
                }
            })
            .collect();

        let mut dots: Vec<Dot> = Vec::new();
        for d in left.tree().dots() {
            if d.col == a && d.row == 1 {
                continue; // the stand-in leaf, replaced by the right subtree
            }
            dots.push(Dot::new(
                col_left[d.col as usize - 1],
                row_left[d.row as usize - 1],
            ));
        }
        for d in right.tree().dots() {
            dots.push(Dot::new(
                col_right[d.col as usize - 1],
                row_right[d.row as usize - 1],
            ));
        }
        Ok(LabelledCnat::new(Cnat::from_dots(n1, dots)?, labels)?)
    }

    /// Deletes the top row (and the right-most column). Only defined when the
    /// root is the sole internal dot in the top row; the minimum label is
    /// dropped.
    pub fn top_row_deletion(&self) -> Result<LabelledCnat, BijectionError> {
        if self.tree().top_row_internal_cols() != vec![1] {
            return Err(BijectionError::TopRowNotRootOnly);
        }
        let n1 = self.size();
        let dots: Vec<Dot> = self
            .tree()
            .dots()
            .iter()
            .filter(|d| d.row > 1)
            .map(|d| Dot::new(d.col, d.row - 1))
            .collect();
        let labels = self.labels()[1..].to_vec();
        Ok(LabelledCnat::new(Cnat::from_dots(n1 - 1, dots)?, labels)?)
    }

    /// Inverse of [`top_row_deletion`](Self::top_row_deletion), pushing a new
    /// top row with label `k < min(labels)`.
    pub fn top_row_insertion(&self, k: u32) -> Result<LabelledCnat, BijectionError> {
        if self.labels().first().is_some_and(|&min| k >= min) {
            return Err(BijectionError::LabelNotMinimal(k));
        }
        let n1 = self.size() + 1;
        let mut dots: Vec<Dot> = self
            .tree()
            .dots()
            .iter()
            .map(|d| Dot::new(d.col, d.row + 1))
            .collect();
        dots.push(Dot::new(1, 1));
        dots.push(Dot::new(n1, 1));
        let mut labels = vec![k];
        labels.extend_from_slice(self.labels());
        Ok(LabelledCnat::new(Cnat::from_dots(n1, dots)?, labels)?)
    }

    /// The word of the label set read off the tree: a single dot gives the
    /// empty word; a root-only top row emits the minimum label followed by the
    /// word of the top-row deletion; otherwise the right subtree's word is
    /// followed by the left subtree's word.
    pub fn psi(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.labels().len());
        let mut stack = vec![self.clone()];
        while let Some(t) = stack.pop() {
            if t.size() == 1 {
                continue;
            }
            if t.tree().top_row_internal_cols().len() == 1 {
                out.push(t.labels()[0]);
                stack.push(t.top_row_deletion().expect("root-only top row"));
            } else {
                let split = t.top_row_decomposition().expect("two top-row dots");
                stack.push(split.left);
                stack.push(split.right);
            }
        }
        out
    }
}

/// Inverse of [`LabelledCnat::psi`]: builds the unique labelled tree whose
/// word is `word`. The label set is the set of letters.
pub fn phi(word: &[u32]) -> Result<LabelledCnat, BijectionError> {
    let mut sorted = word.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(BijectionError::RepeatedLabel(w[0]));
    }
    Ok(phi_unchecked(word))
}

fn phi_unchecked(word: &[u32]) -> LabelledCnat {
    if word.is_empty() {
        return LabelledCnat::new(Cnat::single_dot(), Vec::new()).unwrap();
    }
    let min = *word.iter().min().unwrap();
    if word[0] == min {
        let rest = phi_unchecked(&word[1..]);
        return rest.top_row_insertion(min).expect("strictly smaller label");
    }
    let k = word
        .iter()
        .position(|&v| v < word[0])
        .expect("some letter is below the first");
    let right = phi_unchecked(&word[..k]);
    let left = phi_unchecked(&word[k..]);
    LabelledCnat::compose(&left, &right).expect("split parts glue back")
}

/// Marked fixed-point insertion: sends `(j, p)` with `p` having exactly one
/// tree to the permutation with exactly two trees obtained by inserting the
/// fixed point `j`. Bijective onto the two-tree permutations of length `n+1`.
pub fn fixed_point_bijection(j: u32, p: &Permutation) -> Result<Permutation, BijectionError> {
    let found = cnat_count(p);
    if found != 1 {
        return Err(BijectionError::WrongClass { expected: 1, found });
    }
    let image = p.insert_fixed_point(j)?;
    debug_assert_eq!(cnat_count(&image), 2);
    Ok(image)
}

/// Sends a permutation with exactly two trees to one with exactly three, by
/// inserting a fixed point next to the unique 321 occurrence and rewiring that
/// occurrence into a 3412.
pub fn pattern_swap(p: &Permutation) -> Result<Permutation, BijectionError> {
    let found = cnat_count(p);
    if found != 2 {
        return Err(BijectionError::WrongClass { expected: 2, found });
    }
    let occs = p.occurrences(&"321".parse().unwrap());
    assert_eq!(occs.len(), 1, "two-tree permutations have a unique 321");
    let [i, j, k] = occs[0].indices[..] else {
        unreachable!()
    };
    assert_eq!(p.value_at(j), j, "the middle of the 321 is a fixed point");

    let tilde = p.insert_fixed_point(j + 1)?;
    let mut word = tilde.word().to_vec();
    word[i as usize - 1] = j + 1;
    word[j as usize - 1] = p.value_at(i) + 1;
    word[j as usize] = p.value_at(k);
    word[k as usize] = j;
    let image = Permutation::new(word)?;
    debug_assert_eq!(cnat_count(&image), 3);
    Ok(image)
}

/// Exact inverse of [`pattern_swap`]: locates the unique 3412 occurrence of a
/// three-tree permutation and folds it back to a 321.
pub fn pattern_swap_inverse(q: &Permutation) -> Result<Permutation, BijectionError> {
    let found = cnat_count(q);
    if found != 3 {
        return Err(BijectionError::WrongClass { expected: 3, found });
    }
    let occs = q.occurrences(&"3412".parse().unwrap());
    assert_eq!(occs.len(), 1, "three-tree permutations have a unique 3412");
    let [i, j, k, l] = occs[0].indices[..] else {
        unreachable!()
    };
    assert_eq!(k, j + 1, "columns of the 4 and 1 are adjacent");
    assert_eq!(
        q.value_at(i),
        q.value_at(l) + 1,
        "rows of the 3 and 2 are adjacent"
    );
    assert_eq!(q.value_at(l), j, "the 2 sits at the original fixed row");

    let mut word = q.word().to_vec();
    word[i as usize - 1] = q.value_at(j);
    word[j as usize - 1] = q.value_at(l);
    word[j as usize] = q.value_at(l) + 1;
    word[l as usize - 1] = q.value_at(k);
    let tilde = Permutation::new(word)?;
    let preimage = tilde.remove_fixed_point(q.value_at(l) + 1)?;
    debug_assert_eq!(cnat_count(&preimage), 2);
    Ok(preimage)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(col: u32, row: u32) -> Dot {
        Dot::new(col, row)
    }

    fn upper(n: u32, internal: &[(u32, u32)]) -> Cnat {
        let mut dots: Vec<Dot> = internal.iter().map(|&(c, r)| d(c, r)).collect();
        dots.extend((1..=n).map(|i| d(i, n + 1 - i)));
        Cnat::from_dots(n, dots).unwrap()
    }

    /// The size-10 worked example: labels (2,4,5,7,9,10,13,14,16).
    fn worked_example() -> LabelledCnat {
        let tree = upper(
            10,
            &[
                (1, 1),
                (3, 1),
                (5, 1),
                (1, 2),
                (2, 2),
                (5, 3),
                (6, 3),
                (3, 4),
                (3, 7),
            ],
        );
        LabelledCnat::new(tree, vec![2, 4, 5, 7, 9, 10, 13, 14, 16]).unwrap()
    }

    #[test]
    fn decomposition_of_worked_example() {
        let split = worked_example().top_row_decomposition().unwrap();
        assert_eq!(split.right.labels(), &[9, 10, 14]);
        assert_eq!(split.left.labels(), &[2, 4, 5, 7, 13, 16]);
        assert_eq!(
            split.right.tree().internal_dots(),
            vec![d(1, 1), d(1, 2), d(2, 2)]
        );
        assert_eq!(
            split.left.tree().internal_dots(),
            vec![d(1, 1), d(3, 1), d(1, 2), d(2, 2), d(3, 3), d(3, 4)]
        );

        let glued = LabelledCnat::compose(&split.left, &split.right).unwrap();
        assert_eq!(glued, worked_example());
    }

    #[test]
    fn deletion_of_fig_example() {
        // Size-5 tree with labels (1,2,5,7).
        let t = LabelledCnat::new(
            upper(5, &[(1, 1), (1, 2), (2, 2), (1, 3)]),
            vec![1, 2, 5, 7],
        )
        .unwrap();
        let deleted = t.top_row_deletion().unwrap();
        assert_eq!(deleted.labels(), &[2, 5, 7]);
        assert_eq!(
            deleted.tree().internal_dots(),
            vec![d(1, 1), d(2, 1), d(1, 2)]
        );
        assert_eq!(deleted.top_row_insertion(1).unwrap(), t);
        assert_eq!(
            deleted.top_row_insertion(3),
            Err(BijectionError::LabelNotMinimal(3))
        );
    }

    #[test]
    fn deletion_requires_root_only_top_row() {
        assert_eq!(
            worked_example().top_row_deletion(),
            Err(BijectionError::TopRowNotRootOnly)
        );
        let single = LabelledCnat::new(upper(2, &[(1, 1)]), vec![6]).unwrap();
        let deleted = single.top_row_deletion().unwrap();
        assert_eq!(deleted.size(), 1);
        assert!(deleted.labels().is_empty());
    }

    #[test]
    fn psi_on_worked_example() {
        assert_eq!(
            worked_example().psi(),
            vec![9, 14, 10, 5, 7, 13, 2, 16, 4]
        );
    }

    #[test]
    fn psi_of_first_column_chain_is_increasing() {
        let chain = upper(4, &[(1, 1), (1, 2), (1, 3)]);
        let t = LabelledCnat::new(chain, vec![5, 7, 13]).unwrap();
        assert_eq!(t.psi(), vec![5, 7, 13]);
    }

    #[test]
    fn psi_of_single_dot_is_empty() {
        let t = LabelledCnat::new(Cnat::single_dot(), vec![]).unwrap();
        assert!(t.psi().is_empty());
    }

    #[test]
    fn phi_inverts_psi_on_worked_example() {
        let t = phi(&[9, 14, 10, 5, 7, 13, 2, 16, 4]).unwrap();
        assert_eq!(t, worked_example());
        assert_eq!(phi(&[]).unwrap().size(), 1);

        let chain = phi(&[5, 7, 13]).unwrap();
        assert_eq!(chain.tree().internal_dots(), vec![d(1, 1), d(1, 2), d(1, 3)]);

        assert_eq!(phi(&[4, 4]), Err(BijectionError::RepeatedLabel(4)));
    }

    #[test]
    fn statistics_transport_on_worked_example() {
        let t = worked_example();
        let word = t.psi();
        let minima = crate::perm::left_to_right_minima(&word);
        let mut top_labels: Vec<u32> = t
            .tree()
            .top_row_internal_cols()
            .into_iter()
            .map(|c| t.label_of_col(c))
            .collect();
        assert_eq!(minima, vec![9, 5, 2]);
        top_labels.reverse();
        assert_eq!(minima, top_labels);
        let stats = t.tree().row_statistics();
        assert_eq!(stats.empty_rows as usize, crate::perm::descent_count(&word) + 1);
        assert_eq!(stats.empty_rows, 5);
    }

    #[test]
    fn fixed_point_bijection_examples() {
        let image = fixed_point_bijection(2, &"21".parse().unwrap()).unwrap();
        assert_eq!(image, "321".parse().unwrap());
        assert_eq!(cnat_count(&image), 2);

        // 321 has two trees, not one.
        assert_eq!(
            fixed_point_bijection(2, &"321".parse().unwrap()),
            Err(BijectionError::WrongClass {
                expected: 1,
                found: 2
            })
        );
    }

    #[test]
    fn pattern_swap_examples() {
        assert_eq!(
            pattern_swap(&"321".parse().unwrap()).unwrap(),
            "3412".parse().unwrap()
        );
        assert_eq!(
            pattern_swap_inverse(&"3412".parse().unwrap()).unwrap(),
            "321".parse().unwrap()
        );
        assert_eq!(
            pattern_swap(&"21".parse().unwrap()),
            Err(BijectionError::WrongClass {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn pattern_swap_round_trip_small() {
        for n in 3..=6 {
            for p in Permutation::all(n) {
                if cnat_count(&p) == 2 {
                    let image = pattern_swap(&p).unwrap();
                    assert_eq!(cnat_count(&image), 3);
                    assert_eq!(pattern_swap_inverse(&image).unwrap(), p);
                }
            }
        }
    }
}
