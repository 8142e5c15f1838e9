//! Area sequences, step words and their enumeration.
//!
//! An area sequence `w_1 … w_n` records, for each north step of a Dyck path,
//! how many full cells lie between that step and the diagonal. A word is an
//! area sequence exactly when `w_1 = 0` and `0 ≤ w_{i+1} ≤ w_i + 1`.
//!
//! Positions reported to callers (validation failures, insertion points,
//! bounces) are 1-based.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result, StepFault};

/// A validated area sequence.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct AreaSequence(Vec<usize>);

/// The invariant a rejected word broke.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    NotAnInteger,
    Negative,
    FirstLetterNonZero,
    RiseTooLarge,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::NotAnInteger => "letter is not a non-negative integer",
            Rule::Negative => "letter is negative",
            Rule::FirstLetterNonZero => "first letter must be 0",
            Rule::RiseTooLarge => "letter exceeds previous letter + 1",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// 1-based position of the first offending letter.
    pub position: usize,
    pub rule: Rule,
}

/// Outcome of checking a raw word; `violation` is set iff the word is invalid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violation: Option<Violation>,
}

impl ValidationReport {
    pub fn ok() -> Self {
        ValidationReport { valid: true, violation: None }
    }

    pub fn failed(position: usize, rule: Rule) -> Self {
        ValidationReport { valid: false, violation: Some(Violation { position, rule }) }
    }

    /// Checks `letters` against the area-sequence characterization.
    pub fn of(letters: &[i64]) -> Self {
        let mut prev: Option<i64> = None;
        for (idx, &x) in letters.iter().enumerate() {
            let position = idx + 1;
            if x < 0 {
                return Self::failed(position, Rule::Negative);
            }
            match prev {
                None if x != 0 => return Self::failed(position, Rule::FirstLetterNonZero),
                Some(p) if x > p + 1 => return Self::failed(position, Rule::RiseTooLarge),
                _ => {}
            }
            prev = Some(x);
        }
        Self::ok()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.violation {
            None => f.write_str("valid"),
            Some(v) => write!(f, "position {}: {}", v.position, v.rule),
        }
    }
}

/// Validates an arbitrary integer word.
pub fn validate(letters: &[i64]) -> std::result::Result<AreaSequence, ValidationReport> {
    let report = ValidationReport::of(letters);
    if report.valid {
        Ok(AreaSequence(letters.iter().map(|&x| x as usize).collect()))
    } else {
        Err(report)
    }
}

/// Parses the textual word encoding.
///
/// Accepts the canonical comma-separated form (`0,1,2,1`) and the compact
/// digit form (`0121`). Tokens of the comma form must not carry leading
/// zeros, so `0,01` is rejected rather than silently read as `0,1`.
pub fn parse_word(text: &str) -> std::result::Result<AreaSequence, ValidationReport> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(AreaSequence::empty());
    }
    let mut raw = Vec::new();
    if text.contains(',') {
        for (idx, token) in text.split(',').enumerate() {
            let token = token.trim();
            let malformed = token.is_empty() || (token.len() > 1 && token.starts_with('0')) || token.starts_with('+');
            match token.parse::<i64>() {
                Ok(x) if !malformed => raw.push(x),
                _ => return Err(ValidationReport::failed(idx + 1, Rule::NotAnInteger)),
            }
        }
    } else {
        for (idx, c) in text.chars().enumerate() {
            match c.to_digit(10) {
                Some(d) => raw.push(i64::from(d)),
                None => return Err(ValidationReport::failed(idx + 1, Rule::NotAnInteger)),
            }
        }
    }
    validate(&raw)
}

impl AreaSequence {
    pub fn empty() -> Self {
        AreaSequence(Vec::new())
    }

    /// Wraps letters already known to satisfy the characterization.
    pub(crate) fn from_vec_unchecked(letters: Vec<usize>) -> Self {
        debug_assert!(is_area_sequence(&letters), "not an area sequence: {letters:?}");
        AreaSequence(letters)
    }

    /// Checked constructor from machine-width letters.
    pub fn new(letters: Vec<usize>) -> Result<Self> {
        if is_area_sequence(&letters) {
            Ok(AreaSequence(letters))
        } else {
            let raw: Vec<i64> = letters.iter().map(|&x| x.min(i64::MAX as usize) as i64).collect();
            Err(Error::Invalid(ValidationReport::of(&raw)))
        }
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<usize> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest letter, `None` for the empty word.
    pub fn max_letter(&self) -> Option<usize> {
        self.0.iter().copied().max()
    }

    /// 1-based letter access.
    pub fn at(&self, position: usize) -> usize {
        self.0[position - 1]
    }

    /// Compact digit form, available when every letter is at most 9.
    pub fn compact(&self) -> Option<String> {
        self.0.iter().map(|&x| char::from_digit(x as u32, 10).filter(|_| x <= 9)).collect()
    }

    /// North/east step encoding: each north step is followed by
    /// `w_i + 1 - w_{i+1}` east steps (`w_n + 1` after the last).
    pub fn to_steps(&self) -> StepWord {
        let mut steps = Vec::with_capacity(2 * self.len());
        for (i, &x) in self.0.iter().enumerate() {
            steps.push(Step::North);
            let next = self.0.get(i + 1).copied().unwrap_or(0);
            let east = x + 1 - next;
            steps.extend(std::iter::repeat_n(Step::East, east));
        }
        StepWord(steps)
    }

    pub fn from_steps(steps: &StepWord) -> Self {
        let mut letters = Vec::with_capacity(steps.size());
        let (mut north, mut east) = (0usize, 0usize);
        for step in &steps.0 {
            match step {
                Step::North => {
                    letters.push(north - east);
                    north += 1;
                }
                Step::East => east += 1,
            }
        }
        AreaSequence::from_vec_unchecked(letters)
    }
}

pub(crate) fn is_area_sequence(letters: &[usize]) -> bool {
    match letters.first() {
        None => true,
        Some(&first) => first == 0 && letters.windows(2).all(|p| p[1] <= p[0] + 1),
    }
}

impl fmt::Display for AreaSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl FromStr for AreaSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_word(s).map_err(Error::Invalid)
    }
}

impl AsRef<[usize]> for AreaSequence {
    fn as_ref(&self) -> &[usize] {
        &self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    North,
    East,
}

impl Step {
    pub fn symbol(self) -> char {
        match self {
            Step::North => 'N',
            Step::East => 'E',
        }
    }
}

/// A Dyck path as a word over `{N, E}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StepWord(Vec<Step>);

impl StepWord {
    /// Checks that every prefix has at least as many north as east steps and
    /// that the counts balance at the end.
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        let mut height: usize = 0;
        for (i, step) in steps.iter().enumerate() {
            match step {
                Step::North => height += 1,
                Step::East => {
                    if height == 0 {
                        return Err(Error::MalformedSteps { prefix: i + 1, fault: StepFault::BelowDiagonal });
                    }
                    height -= 1;
                }
            }
        }
        if height != 0 {
            return Err(Error::MalformedSteps { prefix: steps.len(), fault: StepFault::Unbalanced });
        }
        Ok(StepWord(steps))
    }

    pub fn steps(&self) -> &[Step] {
        &self.0
    }

    /// Number of north steps.
    pub fn size(&self) -> usize {
        self.0.len() / 2
    }
}

impl fmt::Display for StepWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|s| write!(f, "{}", s.symbol()))
    }
}

impl FromStr for StepWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let steps = s
            .trim()
            .chars()
            .filter(|c| !c.is_whitespace())
            .enumerate()
            .map(|(i, c)| match c.to_ascii_uppercase() {
                'N' => Ok(Step::North),
                'E' => Ok(Step::East),
                other => Err(Error::MalformedSteps { prefix: i + 1, fault: StepFault::UnknownSymbol(other) }),
            })
            .collect::<Result<Vec<_>>>()?;
        StepWord::new(steps)
    }
}

/// Lexicographic stream of the area sequences of one size sharing a prefix.
///
/// Successor rule: bump the rightmost free letter that is still below its
/// left neighbour + 1, then reset everything to its right to 0.
#[derive(Debug, Clone)]
pub struct AreaSequences {
    word: Vec<usize>,
    fixed: usize,
    started: bool,
    done: bool,
}

impl AreaSequences {
    pub(crate) fn with_prefix(n: usize, prefix: &AreaSequence) -> Result<Self> {
        if prefix.len() > n {
            return Err(Error::PrefixTooLong { prefix: prefix.len(), n });
        }
        let mut word = prefix.letters().to_vec();
        word.resize(n, 0);
        Ok(AreaSequences { word, fixed: prefix.len().max(1), started: false, done: false })
    }

    fn advance(&mut self) -> bool {
        let n = self.word.len();
        for i in (self.fixed..n).rev() {
            if self.word[i] <= self.word[i - 1] {
                self.word[i] += 1;
                self.word[i + 1..].iter_mut().for_each(|x| *x = 0);
                return true;
            }
        }
        false
    }
}

impl Iterator for AreaSequences {
    type Item = AreaSequence;

    fn next(&mut self) -> Option<AreaSequence> {
        if self.done {
            return None;
        }
        if self.started && !self.advance() {
            self.done = true;
            return None;
        }
        self.started = true;
        Some(AreaSequence(self.word.clone()))
    }
}

impl std::iter::FusedIterator for AreaSequences {}

/// Every area sequence of size `n`, in ascending lexicographic order.
pub fn enumerate(n: usize) -> AreaSequences {
    AreaSequences::with_prefix(n, &AreaSequence::empty()).expect("empty prefix always fits")
}

/// Exact Catalan number `C(n) = binom(2n, n) / (n + 1)`.
pub fn catalan(n: usize) -> Result<u64> {
    // C(k+1) = C(k) * 2(2k+1) / (k+2); the product is exact in u128 while C(k) fits u64.
    let mut c: u128 = 1;
    for k in 0..n {
        c = c * (2 * (2 * k as u128 + 1)) / (k as u128 + 2);
        if c > u128::from(u64::MAX) {
            return Err(Error::CatalanOverflow(n));
        }
    }
    Ok(c as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> AreaSequence {
        s.parse().unwrap()
    }

    #[test]
    fn validate_examples() {
        assert!(validate(&[0, 1, 0]).is_ok());
        assert_eq!(validate(&[]).unwrap(), AreaSequence::empty());
        assert_eq!(validate(&[0, 2]).unwrap_err(), ValidationReport::failed(2, Rule::RiseTooLarge));
        assert_eq!(validate(&[1, 0]).unwrap_err(), ValidationReport::failed(1, Rule::FirstLetterNonZero));
        assert_eq!(validate(&[0, 1, -1]).unwrap_err(), ValidationReport::failed(3, Rule::Negative));
    }

    #[test]
    fn report_invariant() {
        let ok = ValidationReport::of(&[0, 1]);
        assert!(ok.valid && ok.violation.is_none());
        let bad = ValidationReport::of(&[0, 0, 2]);
        assert!(!bad.valid && bad.violation.is_some());
    }

    #[test]
    fn parse_both_encodings() {
        assert_eq!(w("0121"), w("0,1,2,1"));
        assert_eq!(w(" 0, 1 ,2 "), w("012"));
        assert_eq!(w(""), AreaSequence::empty());
        assert_eq!(parse_word("0,01").unwrap_err(), ValidationReport::failed(2, Rule::NotAnInteger));
        assert_eq!(parse_word("0x1").unwrap_err(), ValidationReport::failed(2, Rule::NotAnInteger));
        assert_eq!(parse_word("0,,1").unwrap_err(), ValidationReport::failed(2, Rule::NotAnInteger));
        assert_eq!(parse_word("0,1.5").unwrap_err(), ValidationReport::failed(2, Rule::NotAnInteger));
        assert_eq!(parse_word("0,-1").unwrap_err(), ValidationReport::failed(2, Rule::Negative));
        assert_eq!(parse_word("12").unwrap_err(), ValidationReport::failed(1, Rule::FirstLetterNonZero));
    }

    #[test]
    fn wide_letters_need_commas() {
        let long: Vec<usize> = (0..12).collect();
        let seq = AreaSequence::new(long).unwrap();
        assert_eq!(seq.compact(), None);
        assert_eq!(seq.to_string(), "0,1,2,3,4,5,6,7,8,9,10,11");
        assert_eq!(seq.to_string().parse::<AreaSequence>().unwrap(), seq);
        assert_eq!(w("0,1,0").compact().as_deref(), Some("010"));
    }

    #[test]
    fn to_steps_examples() {
        assert_eq!(w("000").to_steps().to_string(), "NENENE");
        assert_eq!(w("012").to_steps().to_string(), "NNNEEE");
        assert_eq!(w("010").to_steps().to_string(), "NNEENE");
        assert_eq!(AreaSequence::empty().to_steps().to_string(), "");
    }

    #[test]
    fn from_steps_examples() {
        let parse = |s: &str| AreaSequence::from_steps(&s.parse().unwrap());
        assert_eq!(parse("NENENE"), w("000"));
        assert_eq!(parse("NNNEEE"), w("012"));
        assert_eq!(parse(""), AreaSequence::empty());
    }

    #[test]
    fn malformed_step_words() {
        assert_eq!(
            "NEEN".parse::<StepWord>().unwrap_err(),
            Error::MalformedSteps { prefix: 3, fault: StepFault::BelowDiagonal }
        );
        assert_eq!(
            "NNE".parse::<StepWord>().unwrap_err(),
            Error::MalformedSteps { prefix: 3, fault: StepFault::Unbalanced }
        );
        assert_eq!(
            "NXE".parse::<StepWord>().unwrap_err(),
            Error::MalformedSteps { prefix: 2, fault: StepFault::UnknownSymbol('X') }
        );
    }

    #[test]
    fn enumerate_small_sizes() {
        let three: Vec<String> = enumerate(3).map(|s| s.compact().unwrap()).collect();
        assert_eq!(three, ["000", "001", "010", "011", "012"]);
        let one: Vec<AreaSequence> = enumerate(1).collect();
        assert_eq!(one, vec![w("0")]);
        let zero: Vec<AreaSequence> = enumerate(0).collect();
        assert_eq!(zero, vec![AreaSequence::empty()]);
    }

    #[test]
    fn enumerate_size_four_table() {
        let four: Vec<String> = enumerate(4).map(|s| s.compact().unwrap()).collect();
        let table = "0000 0001 0010 0011 0012 0100 0101 0110 0111 0112 0120 0121 0122 0123";
        assert_eq!(four, table.split(' ').collect::<Vec<_>>());
    }

    #[test]
    fn prefix_enumeration() {
        let from = |n, p: &str| -> Vec<String> {
            AreaSequences::with_prefix(n, &w(p)).unwrap().map(|s| s.compact().unwrap()).collect()
        };
        assert_eq!(from(3, "01"), ["010", "011", "012"]);
        assert_eq!(from(3, "00"), ["000", "001"]);
        assert_eq!(from(3, ""), ["000", "001", "010", "011", "012"]);
        assert_eq!(from(3, "012"), ["012"]);
        assert!(AreaSequences::with_prefix(2, &w("012")).is_err());
    }

    #[test]
    fn catalan_values() {
        assert_eq!(catalan(0).unwrap(), 1);
        assert_eq!(catalan(3).unwrap(), 5);
        assert_eq!(catalan(4).unwrap(), 14);
        assert_eq!(catalan(12).unwrap(), 208_012);
        assert_eq!(catalan(14).unwrap(), 2_674_440);
        assert!(catalan(33).is_ok());
        assert_eq!(catalan(37), Err(Error::CatalanOverflow(37)));
        assert_eq!(catalan(200), Err(Error::CatalanOverflow(200)));
    }
}
