//! Insertions into area sequences and the iterative map ψ (the inverse of
//! the zeta map) together with its inverse.
//!
//! ψ reads its input left to right. Each letter `a` selects the `a`-th
//! admissible insertion position of the image built so far, so that the
//! image's dinv grows by exactly `a` at every step. The last letter inserted
//! is always the leftmost letter of the rightmost block of maximal letters,
//! which is what makes the map reversible.

use serde::Serialize;

use crate::dyck::AreaSequence;
use crate::error::{Error, Result};

/// `ins_0` prepends a 0; `ins_i` for `1 ≤ i ≤ n` places `w_i + 1` right
/// after position `i`.
pub fn insert(w: &AreaSequence, position: usize) -> Result<AreaSequence> {
    let letters = w.letters();
    if position > letters.len() {
        return Err(Error::PositionOutOfRange { position, len: letters.len() });
    }
    let new = if position == 0 { 0 } else { letters[position - 1] + 1 };
    let mut out = Vec::with_capacity(letters.len() + 1);
    out.extend_from_slice(&letters[..position]);
    out.push(new);
    out.extend_from_slice(&letters[position..]);
    Ok(AreaSequence::from_vec_unchecked(out))
}

/// Admissible insertion positions of a word, decomposed and in admissible order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibleInsertions {
    /// Positions of the maximal letter `m`, ascending.
    pub maxb: Vec<usize>,
    /// Positions of `m - 1` with nothing `≥ m` to their right, ascending.
    pub maxa: Vec<usize>,
    /// Leftmost position of the rightmost block of maximal letters.
    pub i0: Option<usize>,
    /// `maxb` descending, then `maxa` descending, then `i0 - 1`.
    pub order: Vec<usize>,
}

impl AdmissibleInsertions {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Index of `position` in the admissible order.
    pub fn index_of(&self, position: usize) -> Option<usize> {
        self.order.iter().position(|&c| c == position)
    }
}

pub fn admissible(w: &AreaSequence) -> AdmissibleInsertions {
    let letters = w.letters();
    let Some(m) = w.max_letter() else {
        return AdmissibleInsertions { maxb: vec![], maxa: vec![], i0: None, order: vec![0] };
    };
    let maxb: Vec<usize> = (1..=letters.len()).filter(|&i| letters[i - 1] == m).collect();
    let last_max = *maxb.last().expect("maximum occurs");
    let maxa: Vec<usize> =
        if m == 0 { Vec::new() } else { (last_max + 1..=letters.len()).filter(|&i| letters[i - 1] == m - 1).collect() };
    let i0 = first_of_last_max_block(letters, m, last_max);

    // The three parts are pairwise disjoint: maxa lies right of every maximum,
    // and i0 - 1 is either 0 or holds m - 1 followed by an m.
    assert!(i0 == 1 || letters[i0 - 2] + 1 == m, "i0 - 1 must hold m - 1 in {w}");

    let mut order = Vec::with_capacity(maxb.len() + maxa.len() + 1);
    order.extend(maxb.iter().rev());
    order.extend(maxa.iter().rev());
    order.push(i0 - 1);
    AdmissibleInsertions { maxb, maxa, i0: Some(i0), order }
}

/// Walks left from the rightmost maximum while letters stay maximal.
fn first_of_last_max_block(letters: &[usize], m: usize, last_max: usize) -> usize {
    let mut start = last_max;
    while start > 1 && letters[start - 2] == m {
        start -= 1;
    }
    start
}

/// 1-based position of the leftmost letter in the rightmost block of maximal
/// letters: the letter inserted last by ψ.
pub fn last_insertion_point(w: &AreaSequence) -> Result<usize> {
    let m = w.max_letter().ok_or(Error::EmptyWord)?;
    let letters = w.letters();
    let last_max = letters.iter().rposition(|&x| x == m).expect("maximum occurs") + 1;
    Ok(first_of_last_max_block(letters, m, last_max))
}

/// One step of ψ: insert at the `letter`-th admissible position of `image`.
pub fn psi_step(image: &AreaSequence, letter: usize) -> Result<AreaSequence> {
    let positions = admissible(image);
    let &position = positions.order.get(letter).ok_or(Error::NotInsertable { letter, available: positions.len() })?;
    insert(image, position)
}

pub fn psi(w: &AreaSequence) -> AreaSequence {
    w.letters().iter().fold(AreaSequence::empty(), |image, &a| {
        psi_step(&image, a).expect("valid area sequences only use admissible letters")
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub letter: usize,
    /// The admissible position `c_letter` used for the insertion.
    pub position: usize,
    pub image: AreaSequence,
}

/// Every intermediate image of ψ, one per input letter.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct PsiTrace {
    pub steps: Vec<TraceStep>,
}

impl PsiTrace {
    pub fn image(&self) -> AreaSequence {
        self.steps.last().map(|s| s.image.clone()).unwrap_or_default()
    }
}

pub fn psi_trace(w: &AreaSequence) -> PsiTrace {
    let mut image = AreaSequence::empty();
    let mut steps = Vec::with_capacity(w.len());
    for &letter in w.letters() {
        let positions = admissible(&image);
        let position = positions.order[letter];
        image = insert(&image, position).expect("admissible positions are in range");
        steps.push(TraceStep { letter, position, image: image.clone() });
    }
    PsiTrace { steps }
}

/// Removes the letter at 1-based `position`.
pub(crate) fn remove_at(w: &AreaSequence, position: usize) -> AreaSequence {
    let mut letters = w.letters().to_vec();
    letters.remove(position - 1);
    AreaSequence::from_vec_unchecked(letters)
}

/// Undoes the last ψ step: returns the shortened image and the input letter
/// that produced the removed insertion.
pub fn unstep(image: &AreaSequence) -> Result<(AreaSequence, usize)> {
    let p = last_insertion_point(image)?;
    let shorter = remove_at(image, p);
    let letter = admissible(&shorter)
        .index_of(p - 1)
        .unwrap_or_else(|| panic!("inconsistent image {image}: position {} is not admissible in {shorter}", p - 1));
    Ok((shorter, letter))
}

pub fn psi_inverse(image: &AreaSequence) -> AreaSequence {
    let mut letters = vec![0; image.len()];
    let mut current = image.clone();
    for slot in letters.iter_mut().rev() {
        let (shorter, letter) = unstep(&current).expect("length tracks the loop");
        *slot = letter;
        current = shorter;
    }
    AreaSequence::new(letters).expect("ψ⁻¹ of an area sequence is an area sequence")
}
