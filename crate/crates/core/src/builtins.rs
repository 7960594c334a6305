//! Built-in algebras used as test instances and CLI shortcuts.

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::quiver::{path_algebra, QuiverPresentation};

pub const NAMES: &[&str] = &["F2", "F2xF2", "F2[x]/x2", "T2_F2", "T3_F2", "A3_quiver_with_zero_relation", "M2_F2"];

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// Full n x n matrix algebra over F_p with basis e_ij (row-major).
pub fn matrix_algebra(n: usize, p: u32) -> Result<Algebra> {
    let dim = n * n;
    let idx = |i: usize, j: usize| i * n + j;
    let mut table = vec![vec![vec![0u32; dim]; dim]; dim];
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                table[idx(i, j)][idx(j, l)][idx(i, l)] = 1;
            }
        }
    }
    let mut unit = vec![0; dim];
    for i in 0..n {
        unit[idx(i, i)] = 1;
    }
    let names = (0..n)
        .flat_map(|i| (0..n).map(move |j| format!("e{}{}", i + 1, j + 1)))
        .collect();
    Algebra::from_structure_constants(p, names, table, unit)
}

pub fn load(name: &str) -> Result<Algebra> {
    match name {
        "F2" => Ok(path_algebra(&QuiverPresentation::new(&["1"], &[], &[], 1), 2)?.relabel(labels(&["1"]))),
        "F2xF2" => path_algebra(&QuiverPresentation::new(&["1", "2"], &[], &[], 1), 2),
        "F2[x]/x2" => Ok(path_algebra(&QuiverPresentation::new(&["1"], &[("1", "1", "x")], &["x.x"], 2), 2)?
            .relabel(labels(&["1", "x"]))),
        "T2_F2" => Ok(path_algebra(&QuiverPresentation::new(&["1", "2"], &[("1", "2", "e12")], &[], 2), 2)?
            .relabel(labels(&["e11", "e22", "e12"]))),
        "T3_F2" => Ok(path_algebra(
            &QuiverPresentation::new(&["1", "2", "3"], &[("1", "2", "e12"), ("2", "3", "e23")], &[], 3),
            2,
        )?
        .relabel(labels(&["e11", "e22", "e33", "e12", "e23", "e13"]))),
        "A3_quiver_with_zero_relation" => path_algebra(
            &QuiverPresentation::new(&["1", "2", "3"], &[("1", "2", "a"), ("2", "3", "b")], &["a.b"], 3),
            2,
        ),
        "M2_F2" => matrix_algebra(2, 2),
        other => Err(Error::UnknownLabel(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_builtins_load() {
        let dims: Vec<usize> = NAMES.iter().map(|n| load(n).unwrap().dim()).collect();
        assert_eq!(dims, vec![1, 2, 2, 3, 6, 5, 4]);
    }

    #[test]
    fn t3_labels_follow_matrix_units() {
        let a = load("T3_F2").unwrap();
        let e12 = a.parse_element("e12").unwrap();
        let e23 = a.parse_element("e23").unwrap();
        assert_eq!(a.mul(&e12, &e23), a.parse_element("e13").unwrap());
        assert!(a.mul(&e23, &e12).is_zero());
    }
}
