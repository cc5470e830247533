use crate::coeffring::RationalS;

pub(crate) struct LinearSolution {
    /// One solution, free variables set to zero.
    pub x: Vec<RationalS>,
    pub rank: usize,
    /// Original indices of equations that reduce to `0 = c` with `c != 0`.
    pub inconsistent: Vec<usize>,
}

/// Gauss-Jordan elimination over the rational functions in `s`.
pub(crate) fn solve(mut rows: Vec<Vec<RationalS>>, mut rhs: Vec<RationalS>, ncols: usize) -> LinearSolution {
    let nrows = rows.len();
    let mut order: Vec<usize> = (0..nrows).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        rhs.swap(r, p);
        order.swap(r, p);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        for x in rows[r].iter_mut().skip(c) {
            *x = &*x * &inv;
        }
        rhs[r] = &rhs[r] * &inv;
        for i in 0..nrows {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            for j in c..ncols {
                if !rows[r][j].is_zero() {
                    let sub = &f * &rows[r][j];
                    rows[i][j] = &rows[i][j] - &sub;
                }
            }
            let sub = &f * &rhs[r];
            rhs[i] = &rhs[i] - &sub;
        }
        pivots.push(c);
        r += 1;
    }
    let mut x = vec![RationalS::zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rhs[i].clone();
    }
    let mut inconsistent: Vec<usize> = (r..nrows).filter(|&i| !rhs[i].is_zero()).map(|i| order[i]).collect();
    inconsistent.sort_unstable();
    LinearSolution {
        x,
        rank: r,
        inconsistent,
    }
}
