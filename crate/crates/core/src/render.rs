//! ASCII drawings of Dyck paths.
//!
//! The drawing is a lattice of `(n + 1) × (n + 1)` points shown as `.`, with
//! the path's north steps as `|` and east steps as `-`. Diagonal cells carry a
//! `/`. Rows run top to bottom, so the last north step sits on the top row.
//! Each row holding a north step is annotated with its letter (and bounce
//! letter when the bounce path is drawn). Bounce-path edges not shared with
//! the path are drawn as `:` and `=`.

use crate::dyck::{AreaSequence, Step};
use crate::error::{Error, Result};
use crate::stats::bounce_profile;

pub const MAX_RENDER_SIZE: usize = 64;

pub fn render(w: &AreaSequence, with_bounce: bool) -> Result<String> {
    Ok(render_lines(w, with_bounce)?.join("\n") + "\n")
}

pub fn render_lines(w: &AreaSequence, with_bounce: bool) -> Result<Vec<String>> {
    let n = w.len();
    if n > MAX_RENDER_SIZE {
        return Err(Error::TooLargeToRender { n, max: MAX_RENDER_SIZE });
    }
    let side = 2 * n + 1;
    let mut grid = vec![vec![' '; side]; side];
    // Lattice point (x, y) lives at row 2(n - y), column 2x.
    for y in 0..=n {
        for x in 0..=n {
            grid[2 * (n - y)][2 * x] = '.';
        }
    }
    for k in 0..n {
        grid[2 * (n - k) - 1][2 * k + 1] = '/';
    }
    let bounce = bounce_profile(w);
    if with_bounce {
        draw(&mut grid, n, &bounce.b, ':', '=');
    }
    draw(&mut grid, n, w, '|', '-');

    let mut lines: Vec<String> = grid
        .into_iter()
        .enumerate()
        .map(|(row, cells)| {
            let mut line: String = cells.into_iter().collect();
            if row % 2 == 1 {
                let i = n - (row - 1) / 2;
                line.push_str(&format!("  {:>2}", w.at(i)));
                if with_bounce {
                    line.push_str(&format!(" {:>2}", bounce.b.at(i)));
                }
            }
            line.trim_end().to_string()
        })
        .collect();
    if with_bounce {
        lines.push(String::new());
        lines.push(format!("path | -   bounce : =   bounces at rows {}", join(&bounce.bounces)));
    }
    Ok(lines)
}

fn draw(grid: &mut [Vec<char>], n: usize, w: &AreaSequence, north: char, east: char) {
    let (mut x, mut y) = (0usize, 0usize);
    for step in w.to_steps().steps() {
        match step {
            Step::North => {
                grid[2 * (n - y) - 1][2 * x] = north;
                y += 1;
            }
            Step::East => {
                grid[2 * (n - y)][2 * x + 1] = east;
                x += 1;
            }
        }
    }
}

fn join(values: &[usize]) -> String {
    if values.is_empty() {
        return "none".to_string();
    }
    values.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}
