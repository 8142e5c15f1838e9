//! Golden tables transcribed from the worked examples: each row is an image
//! word with its admissible insertion markers, written `^k` for "index k of
//! the admissible order sits here".

use areaseq::stats::dinv;
use areaseq::{admissible, insert, psi_trace, AreaSequence, StepWord};

/// Splits a marked row into the word and `(position, index)` markers.
fn parse_marked(row: &str) -> (AreaSequence, Vec<(usize, usize)>) {
    let mut letters = Vec::new();
    let mut markers = Vec::new();
    for token in row.split_whitespace() {
        match token.strip_prefix('^') {
            Some(index) => markers.push((letters.len(), index.parse().unwrap())),
            None => letters.push(token.parse().unwrap()),
        }
    }
    (AreaSequence::new(letters).unwrap(), markers)
}

fn assert_markers(row: &str) {
    let (word, markers) = parse_marked(row);
    let order = admissible(&word).order;
    assert_eq!(order.len(), markers.len(), "{row}");
    for (position, index) in markers {
        assert_eq!(order[index], position, "{row}: marker ^{index}");
    }
}

#[test]
fn step_by_step_table() {
    let rows = [
        "^1 0 ^0",
        "^2 0 ^1 0 ^0",
        "^3 0 ^2 0 ^1 0 ^0",
        "0 0 ^2 1 ^0 0 ^1",
        "0 0 1 ^1 0 ^2 1 ^0",
        "0 0 1 ^2 2 ^0 0 1 ^1",
        "0 0 1 ^3 2 ^1 2 ^0 0 1 ^2",
        "0 0 1 ^4 2 ^2 2 ^1 2 ^0 0 1 ^3",
        "0 0 1 2 ^3 2 ^2 2 ^1 0 1 ^4 2 ^0",
        "0 0 1 2 2 2 0 1 2 ^1 3 ^0",
        "0 0 1 2 2 2 0 1 2 ^2 3 ^1 3 ^0",
        "0 0 1 2 2 2 0 1 2 3 ^2 4 ^0 3 ^1",
        "0 0 1 2 2 2 0 1 2 3 4 ^1 5 ^0 3",
        "0 0 1 2 2 2 0 1 2 3 4 ^2 5 ^1 5 ^0 3",
        "0 0 1 2 2 2 0 1 2 3 4 ^3 5 ^2 5 ^1 5 ^0 3",
        "0 0 1 2 2 2 0 1 2 3 4 5 ^3 6 ^0 5 ^2 5 ^1 3",
        "0 0 1 2 2 2 0 1 2 3 4 5 6 ^1 5 5 ^2 6 ^0 3",
    ];
    let trace = psi_trace(&"0,1,2,1,1,1,2,3,3,0,1,1,0,1,2,2,1".parse().unwrap());
    assert_eq!(trace.steps.len(), rows.len());
    for (step, row) in trace.steps.iter().zip(rows) {
        assert_eq!(step.image, parse_marked(row).0);
        assert_markers(row);
    }
}

#[test]
fn all_insertions_table() {
    let base = "0 1 2 ^4 2 ^3 2 ^2 1 0 1 ^7 2 ^1 2 ^0 0 1 ^6 1 ^5";
    let rows = [
        (10, 44, "0 1 2 2 2 1 0 1 2 2 ^1 3 ^0 0 1 1"),
        (9, 45, "0 1 2 2 2 1 0 1 2 ^2 3 ^0 2 ^1 0 1 1"),
        (5, 46, "0 1 2 2 2 ^3 3 ^0 1 0 1 2 ^2 2 ^1 0 1 1"),
        (4, 47, "0 1 2 2 ^4 3 ^0 2 ^3 1 0 1 2 ^2 2 ^1 0 1 1"),
        (3, 48, "0 1 2 ^5 3 ^0 2 ^4 2 ^3 1 0 1 2 ^2 2 ^1 0 1 1"),
        (13, 49, "0 1 2 ^5 2 ^4 2 ^3 1 0 1 2 ^2 2 ^1 0 1 1 ^6 2 ^0"),
        (12, 50, "0 1 2 ^5 2 ^4 2 ^3 1 0 1 2 ^2 2 ^1 0 1 ^7 2 ^0 1 ^6"),
        (8, 51, "0 1 2 ^5 2 ^4 2 ^3 1 0 1 ^8 2 ^2 2 ^1 2 ^0 0 1 ^7 1 ^6"),
    ];
    assert_markers(base);
    let (word, _) = parse_marked(base);
    assert_eq!(dinv(&word), 44);
    let order = admissible(&word).order;
    for (index, (position, expected_dinv, row)) in rows.into_iter().enumerate() {
        assert_eq!(order[index], position);
        let grown = insert(&word, position).unwrap();
        assert_eq!(grown, parse_marked(row).0);
        assert_eq!(dinv(&grown), expected_dinv);
        assert_markers(row);
    }
}

#[test]
fn drawn_path_step_word() {
    // Read off the drawn lattice path: N³ E² N E N E N³ E N E⁴ N² E N E² N³ E N E² N E².
    let steps: StepWord = "NNNEENENENNNENEEEENNENEENNNENEENEE".parse().unwrap();
    assert_eq!(steps.steps().len(), 34);
    let word = AreaSequence::from_steps(&steps);
    assert_eq!(word.to_string(), "0,1,2,1,1,1,2,3,3,0,1,1,0,1,2,2,1");
    assert_eq!(word.to_steps(), steps);
}

#[test]
fn size_three_paths() {
    let drawn = ["NENENE", "NENNEE", "NNEENE", "NNENEE", "NNNEEE"];
    let words: Vec<String> =
        drawn.iter().map(|s| AreaSequence::from_steps(&s.parse().unwrap()).compact().unwrap()).collect();
    assert_eq!(words, ["000", "001", "010", "011", "012"]);
}
