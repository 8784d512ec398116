//! Test-only helpers shared by the integration suites.

#![allow(dead_code)]

pub mod oracle;

use submig::Point;

/// `true` when every target can be paired with a distinct point within `tol`.
pub fn matches_distinct(points: &[Point], targets: &[Point], tol: f64) -> bool {
    if points.len() < targets.len() {
        return false;
    }
    let mut used = vec![false; points.len()];
    assign(points, targets, tol, 0, &mut used)
}

fn assign(points: &[Point], targets: &[Point], tol: f64, k: usize, used: &mut [bool]) -> bool {
    if k == targets.len() {
        return true;
    }
    for i in 0..points.len() {
        if !used[i] && points[i].distance(targets[k]) <= tol {
            used[i] = true;
            if assign(points, targets, tol, k + 1, used) {
                return true;
            }
            used[i] = false;
        }
    }
    false
}

/// Pairs each target with a distinct point minimizing the total distance
/// (brute force over permutations; inputs are tiny).
pub fn best_assignment(points: &[Point], targets: &[Point]) -> Option<Vec<usize>> {
    if points.len() < targets.len() {
        return None;
    }
    let mut best: Option<(f64, Vec<usize>)> = None;
    let mut current = Vec::new();
    let mut used = vec![false; points.len()];
    search(points, targets, &mut current, &mut used, 0.0, &mut best);
    best.map(|(_, a)| a)
}

fn search(
    points: &[Point],
    targets: &[Point],
    current: &mut Vec<usize>,
    used: &mut [bool],
    cost: f64,
    best: &mut Option<(f64, Vec<usize>)>,
) {
    let k = current.len();
    if k == targets.len() {
        if best.as_ref().is_none_or(|(c, _)| cost < *c) {
            *best = Some((cost, current.clone()));
        }
        return;
    }
    for i in 0..points.len() {
        if !used[i] {
            used[i] = true;
            current.push(i);
            search(points, targets, current, used, cost + points[i].distance(targets[k]), best);
            current.pop();
            used[i] = false;
        }
    }
}

/// Node indices of `p` on a uniform grid, rounded to the nearest node.
pub fn nearest_node(grid: &submig::Grid, p: Point) -> (i64, i64) {
    let i = ((p.x - grid.x_min) / grid.dx()).round() as i64;
    let j = ((p.y - grid.y_min) / grid.dy()).round() as i64;
    (i, j)
}

/// Both points fall within one grid cell of each other (Chebyshev distance
/// in node units at most 1).
pub fn within_one_cell(grid: &submig::Grid, a: Point, b: Point) -> bool {
    (a.x - b.x).abs() <= grid.dx() * (1.0 + 1e-9) && (a.y - b.y).abs() <= grid.dy() * (1.0 + 1e-9)
}

pub fn report(id: &str, pass: bool, detail: impl std::fmt::Display) {
    println!("{id} {} {detail}", if pass { "PASS" } else { "FAIL" });
}
