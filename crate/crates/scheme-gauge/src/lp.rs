//! Dense two-phase simplex solver for the small linear programs that the
//! scheme SDPs reduce to, and for the cut-cover oracle.
//!
//! The tableau is dense. Entering variables normally follow Dantzig's rule;
//! after a run of degenerate pivots the solver switches to Bland's rule,
//! which prevents cycling, and switches back once the objective moves.
//! Equality constraints are handled as two opposing inequalities.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rel {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<f64>,
    pub rel: Rel,
    pub rhs: f64,
}

/// A linear program over variables x_0..x_{n-1}.
///
/// Bounds default to x >= 0; use `free`/`set_bounds` for other ranges.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub sense: Sense,
    pub objective: Vec<f64>,
    pub constraints: Vec<Constraint>,
    pub bounds: Vec<(f64, f64)>,
    pub feas_tol: f64,
    pub opt_tol: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug)]
pub struct LpSolution {
    pub status: LpStatus,
    pub value: f64,
    pub point: Vec<f64>,
    /// One dual value per constraint in input order, normalized so that the
    /// dual objective is sum(dual_i * rhs_i) for problems without finite
    /// variable shifts.
    pub dual: Vec<f64>,
}

impl LinearProgram {
    pub fn new(sense: Sense, objective: Vec<f64>) -> LinearProgram {
        let n = objective.len();
        LinearProgram {
            sense,
            objective,
            constraints: Vec::new(),
            bounds: vec![(0.0, f64::INFINITY); n],
            feas_tol: 1e-8,
            opt_tol: 1e-9,
        }
    }

    pub fn minimize(objective: Vec<f64>) -> LinearProgram {
        LinearProgram::new(Sense::Minimize, objective)
    }

    pub fn maximize(objective: Vec<f64>) -> LinearProgram {
        LinearProgram::new(Sense::Maximize, objective)
    }

    pub fn constraint(&mut self, coeffs: Vec<f64>, rel: Rel, rhs: f64) -> &mut Self {
        self.constraints.push(Constraint { coeffs, rel, rhs });
        self
    }

    /// Makes variable `j` free (unbounded in both directions).
    pub fn free(&mut self, j: usize) -> &mut Self {
        self.bounds[j] = (f64::NEG_INFINITY, f64::INFINITY);
        self
    }

    pub fn set_bounds(&mut self, j: usize, lo: f64, hi: f64) -> &mut Self {
        self.bounds[j] = (lo, hi);
        self
    }

    pub fn solve(&self) -> Result<LpSolution> {
        solve(self)
    }
}

// internal column description after the variable transform
enum ColMap {
    /// x_j = shift + u (or x_j = shift - u when negated)
    Shifted {
        var: usize,
        shift: f64,
        negated: bool,
    },
    /// positive part of a free split
    FreePos { var: usize },
    /// negative part of a free split
    FreeNeg { var: usize },
}

pub fn solve(lp: &LinearProgram) -> Result<LpSolution> {
    let nvars = lp.objective.len();
    for (i, c) in lp.constraints.iter().enumerate() {
        if c.coeffs.len() != nvars {
            return Err(Error::Dimension(format!(
                "constraint {i} has {} coefficients, expected {nvars}",
                c.coeffs.len()
            )));
        }
    }
    if lp.bounds.len() != nvars {
        return Err(Error::Dimension("bounds length mismatch".into()));
    }
    let finite = |x: f64| x.is_finite();
    if !lp.objective.iter().all(|x| finite(*x))
        || !lp
            .constraints
            .iter()
            .all(|c| c.coeffs.iter().all(|x| finite(*x)) && finite(c.rhs))
    {
        return Err(Error::Lp("non-finite coefficient".into()));
    }

    // sense normalization
    let minimize = lp.sense == Sense::Minimize;
    let user_obj: Vec<f64> = if minimize {
        lp.objective.clone()
    } else {
        lp.objective.iter().map(|c| -c).collect()
    };

    // variable transform to u >= 0
    let mut cols: Vec<ColMap> = Vec::new();
    let mut obj_const = 0.0;
    for (j, &(lo, hi)) in lp.bounds.iter().enumerate() {
        if lo.is_finite() {
            cols.push(ColMap::Shifted {
                var: j,
                shift: lo,
                negated: false,
            });
            obj_const += user_obj[j] * lo;
        } else if hi.is_finite() {
            cols.push(ColMap::Shifted {
                var: j,
                shift: hi,
                negated: true,
            });
            obj_const += user_obj[j] * hi;
        } else {
            cols.push(ColMap::FreePos { var: j });
            cols.push(ColMap::FreeNeg { var: j });
        }
    }
    let ncols = cols.len();
    let col_coeff = |map: &ColMap, row: &[f64]| -> f64 {
        match map {
            ColMap::Shifted { var, negated, .. } => {
                if *negated {
                    -row[*var]
                } else {
                    row[*var]
                }
            }
            ColMap::FreePos { var } => row[*var],
            ColMap::FreeNeg { var } => -row[*var],
        }
    };
    let shift_of = |j: usize| -> f64 {
        match &cols[j] {
            ColMap::Shifted { shift, .. } => *shift,
            _ => 0.0,
        }
    };

    // expanded rows: user rows (Eq split into Ge+Le) plus upper-bound rows
    // rows as (coeffs over u, rel in {Le, Ge}, rhs, origin)
    struct Row {
        a: Vec<f64>,
        le: bool,
        b: f64,
        user: Option<(usize, f64)>, // (constraint index, dual sign multiplier)
    }
    let mut rows: Vec<Row> = Vec::new();
    for (ci, c) in lp.constraints.iter().enumerate() {
        let a: Vec<f64> = cols.iter().map(|m| col_coeff(m, &c.coeffs)).collect();
        let shift_term: f64 = (0..ncols)
            .map(|j| match &cols[j] {
                ColMap::Shifted {
                    var,
                    shift,
                    negated: _,
                } => c.coeffs[*var] * shift,
                _ => 0.0,
            })
            .sum();
        let b = c.rhs - shift_term;
        match c.rel {
            Rel::Le => rows.push(Row {
                a,
                le: true,
                b,
                user: Some((ci, 1.0)),
            }),
            Rel::Ge => rows.push(Row {
                a,
                le: false,
                b,
                user: Some((ci, 1.0)),
            }),
            Rel::Eq => {
                rows.push(Row {
                    a: a.clone(),
                    le: false,
                    b,
                    user: Some((ci, 1.0)),
                });
                rows.push(Row {
                    a,
                    le: true,
                    b,
                    user: Some((ci, 1.0)),
                });
            }
        }
    }
    for (j, map) in cols.iter().enumerate() {
        if let ColMap::Shifted {
            var,
            shift,
            negated: false,
        } = map
        {
            let hi = lp.bounds[*var].1;
            if hi.is_finite() {
                let mut a = vec![0.0; ncols];
                a[j] = 1.0;
                rows.push(Row {
                    a,
                    le: true,
                    b: hi - shift,
                    user: None,
                });
            }
        }
    }

    let m = rows.len();
    let obj: Vec<f64> = cols.iter().map(|cm| col_coeff(cm, &user_obj)).collect();

    // canonical equality form: structural | slack | artificial, rhs >= 0
    let total = ncols + m + m;
    let mut tab = vec![0.0; m * (total + 1)];
    let width = total + 1;
    let mut dual_sign = vec![1.0f64; m];
    for (i, row) in rows.iter().enumerate() {
        let neg = row.b < 0.0;
        let s = if neg { -1.0 } else { 1.0 };
        if neg {
            dual_sign[i] = -1.0;
        }
        for j in 0..ncols {
            tab[i * width + j] = s * row.a[j];
        }
        // slack (+1 for Le, -1 for Ge), sign-flipped with the row
        tab[i * width + ncols + i] = s * if row.le { 1.0 } else { -1.0 };
        tab[i * width + ncols + m + i] = 1.0; // artificial
        tab[i * width + total] = s * row.b;
    }
    let mut basis: Vec<usize> = (0..m).map(|i| ncols + m + i).collect();

    let art_start = ncols + m;
    let iter_cap = 200_000;

    // simplex over the tableau with the given cost vector; returns objective
    let run_phase = |tab: &mut Vec<f64>,
                     basis: &mut Vec<usize>,
                     cost: &[f64],
                     allow: &dyn Fn(usize) -> bool|
     -> Result<f64> {
        // reduced cost row: r_j = c_j - c_B B^-1 A_j ; z = c_B B^-1 b
        let mut red = vec![0.0; total];
        let mut z = 0.0;
        for j in 0..total {
            red[j] = cost[j];
        }
        for i in 0..m {
            let cb = cost[basis[i]];
            if cb != 0.0 {
                for j in 0..total {
                    red[j] -= cb * tab[i * width + j];
                }
                z -= cb * tab[i * width + total];
            }
        }
        let mut stall = 0usize;
        for _iter in 0..iter_cap {
            // entering column
            let mut enter: Option<usize> = None;
            if stall > 64 {
                // Bland: lowest-index improving column
                for j in 0..total {
                    if allow(j) && red[j] < -1e-9 {
                        enter = Some(j);
                        break;
                    }
                }
            } else {
                let mut best = -1e-9;
                for j in 0..total {
                    if allow(j) && red[j] < best {
                        best = red[j];
                        enter = Some(j);
                    }
                }
            }
            let Some(e) = enter else {
                return Ok(-z);
            };
            // ratio test; Bland tie-break on lowest basis variable index
            let mut leave: Option<usize> = None;
            let mut best_ratio = f64::INFINITY;
            for i in 0..m {
                let aie = tab[i * width + e];
                if aie > 1e-11 {
                    let ratio = tab[i * width + total] / aie;
                    let better = match leave {
                        None => true,
                        Some(l) => {
                            ratio < best_ratio - 1e-12
                                || (ratio < best_ratio + 1e-12 && basis[i] < basis[l])
                        }
                    };
                    if better {
                        best_ratio = ratio;
                        leave = Some(i);
                    }
                }
            }
            let Some(l) = leave else {
                return Err(Error::Lp("unbounded".into()));
            };
            stall = if best_ratio <= 1e-12 { stall + 1 } else { 0 };
            // pivot
            let piv = tab[l * width + e];
            for j in 0..=total {
                tab[l * width + j] /= piv;
            }
            for i in 0..m {
                if i != l {
                    let f = tab[i * width + e];
                    if f != 0.0 {
                        for j in 0..=total {
                            tab[i * width + j] -= f * tab[l * width + j];
                        }
                    }
                }
            }
            let f = red[e];
            if f != 0.0 {
                for j in 0..total {
                    red[j] -= f * tab[l * width + j];
                }
                z -= f * tab[l * width + total];
            }
            basis[l] = e;
        }
        Err(Error::Lp("iteration limit exceeded".into()))
    };

    // phase 1
    let mut cost1 = vec![0.0; total];
    for j in art_start..total {
        cost1[j] = 1.0;
    }
    let p1 = run_phase(&mut tab, &mut basis, &cost1, &|_| true)?;
    if p1 > lp.feas_tol {
        return Ok(LpSolution {
            status: LpStatus::Infeasible,
            value: f64::NAN,
            point: vec![],
            dual: vec![],
        });
    }
    // drive artificials out of the basis where possible
    for i in 0..m {
        if basis[i] >= art_start {
            if let Some(j) = (0..art_start).find(|&j| tab[i * width + j].abs() > 1e-9) {
                let piv = tab[i * width + j];
                for k in 0..=total {
                    tab[i * width + k] /= piv;
                }
                for r in 0..m {
                    if r != i {
                        let f = tab[r * width + j];
                        if f != 0.0 {
                            for k in 0..=total {
                                tab[r * width + k] -= f * tab[i * width + k];
                            }
                        }
                    }
                }
                basis[i] = j;
            }
        }
    }

    // phase 2: artificials may not enter
    let mut cost2 = vec![0.0; total];
    cost2[..ncols].copy_from_slice(&obj);
    let value = match run_phase(&mut tab, &mut basis, &cost2, &|j| j < art_start) {
        Ok(v) => v,
        Err(Error::Lp(msg)) if msg == "unbounded" => {
            return Ok(LpSolution {
                status: LpStatus::Unbounded,
                value: f64::NAN,
                point: vec![],
                dual: vec![],
            });
        }
        Err(e) => return Err(e),
    };

    // primal point
    let mut u = vec![0.0; ncols];
    for i in 0..m {
        if basis[i] < ncols {
            u[basis[i]] = tab[i * width + total];
        }
    }
    let mut point = vec![0.0; nvars];
    for (j, map) in cols.iter().enumerate() {
        match map {
            ColMap::Shifted { var, negated, .. } => {
                point[*var] = if *negated {
                    shift_of(j) - u[j]
                } else {
                    shift_of(j) + u[j]
                };
            }
            ColMap::FreePos { var } => point[*var] += u[j],
            ColMap::FreeNeg { var } => point[*var] -= u[j],
        }
    }

    // duals: y_i = c_B B^-1 e_i read from the artificial column of row i
    let mut red = vec![0.0; total];
    for j in 0..total {
        red[j] = cost2[j];
    }
    for i in 0..m {
        let cb = cost2[basis[i]];
        if cb != 0.0 {
            for j in 0..total {
                red[j] -= cb * tab[i * width + j];
            }
        }
    }
    let mut dual = vec![0.0; lp.constraints.len()];
    for (i, row) in rows.iter().enumerate() {
        if let Some((ci, mult)) = row.user {
            // red[art_i] = 0 - y_i, so y_i = -red[art_i]
            let y = -red[art_start + i] * dual_sign[i];
            dual[ci] += mult * y;
        }
    }

    let (value, dual) = if minimize {
        (value + obj_const, dual)
    } else {
        (-(value + obj_const), dual.into_iter().map(|y| -y).collect())
    };

    Ok(LpSolution {
        status: LpStatus::Optimal,
        value,
        point,
        dual,
    })
}
