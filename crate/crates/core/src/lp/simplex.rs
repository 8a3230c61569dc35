use super::{LpOptions, LpProblem, LpSolution, LpStatus, Relation, Sense};
use crate::error::{Error, Result};

const OPTIMALITY_TOL: f64 = 1e-9;

/// How an original variable is expressed in nonnegative standard-form columns.
struct VarMap {
    offset: f64,
    terms: Vec<(usize, f64)>,
}

/// Sparse coefficients, relation and right-hand side of one row.
type Row = (Vec<(usize, f64)>, Relation, f64);

struct StandardForm {
    rows: usize,
    cols: usize,
    /// Row-major `rows x cols`.
    a: Vec<f64>,
    b: Vec<f64>,
    /// Max-form costs.
    c: Vec<f64>,
    first_artificial: usize,
    row_sign: Vec<f64>,
    vars: Vec<VarMap>,
    initial_basis: Vec<usize>,
}

fn standard_form(problem: &LpProblem) -> StandardForm {
    let sense = match problem.sense {
        Sense::Max => 1.0,
        Sense::Min => -1.0,
    };
    let mut vars = Vec::with_capacity(problem.num_vars());
    let mut structural = 0usize;
    let mut bound_rows: Vec<Row> = Vec::new();
    for j in 0..problem.num_vars() {
        let (lo, hi) = problem.bounds(j);
        let map = if lo.is_finite() {
            let col = structural;
            structural += 1;
            if hi.is_finite() {
                bound_rows.push((vec![(col, 1.0)], Relation::Le, hi - lo));
            }
            VarMap { offset: lo, terms: vec![(col, 1.0)] }
        } else if hi.is_finite() {
            let col = structural;
            structural += 1;
            VarMap { offset: hi, terms: vec![(col, -1.0)] }
        } else {
            let col = structural;
            structural += 2;
            VarMap { offset: 0.0, terms: vec![(col, 1.0), (col + 1, -1.0)] }
        };
        vars.push(map);
    }

    let mut rows: Vec<Row> = problem
        .constraints()
        .iter()
        .map(|con| {
            let mut coeffs = Vec::with_capacity(con.coeffs.len());
            let mut rhs = con.rhs;
            for &(j, a) in &con.coeffs {
                rhs -= a * vars[j].offset;
                coeffs.extend(vars[j].terms.iter().map(|&(col, k)| (col, a * k)));
            }
            (coeffs, con.relation, rhs)
        })
        .collect();
    rows.extend(bound_rows);

    let m = rows.len();
    let mut row_sign = vec![1.0; m];
    for (i, (coeffs, rel, rhs)) in rows.iter_mut().enumerate() {
        if *rhs < 0.0 || (*rhs == 0.0 && *rel == Relation::Ge) {
            row_sign[i] = -1.0;
            *rhs = -*rhs;
            coeffs.iter_mut().for_each(|(_, a)| *a = -*a);
            *rel = match *rel {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
        }
    }

    let slacks = rows.iter().filter(|r| r.1 != Relation::Eq).count();
    let artificials = rows.iter().filter(|r| r.1 != Relation::Le).count();
    let first_artificial = structural + slacks;
    let cols = first_artificial + artificials;
    let mut a = vec![0.0; m * cols];
    let mut b = vec![0.0; m];
    let mut initial_basis = vec![0; m];
    let (mut next_slack, mut next_art) = (structural, first_artificial);
    for (i, (coeffs, rel, rhs)) in rows.iter().enumerate() {
        for &(col, v) in coeffs {
            a[i * cols + col] += v;
        }
        b[i] = *rhs;
        match rel {
            Relation::Le => {
                a[i * cols + next_slack] = 1.0;
                initial_basis[i] = next_slack;
                next_slack += 1;
            }
            Relation::Ge => {
                a[i * cols + next_slack] = -1.0;
                next_slack += 1;
                a[i * cols + next_art] = 1.0;
                initial_basis[i] = next_art;
                next_art += 1;
            }
            Relation::Eq => {
                a[i * cols + next_art] = 1.0;
                initial_basis[i] = next_art;
                next_art += 1;
            }
        }
    }

    let mut c = vec![0.0; cols];
    for (j, map) in vars.iter().enumerate() {
        for &(col, k) in &map.terms {
            c[col] += sense * problem.objective()[j] * k;
        }
    }

    StandardForm {
        rows: m,
        cols,
        a,
        b,
        c,
        first_artificial,
        row_sign,
        vars,
        initial_basis,
    }
}

struct Tableau {
    rows: usize,
    width: usize,
    data: Vec<f64>,
    basis: Vec<usize>,
    is_basic: Vec<bool>,
}

impl Tableau {
    fn new(sf: &StandardForm) -> Self {
        let width = sf.cols + 1;
        let mut data = vec![0.0; sf.rows * width];
        for i in 0..sf.rows {
            data[i * width..i * width + sf.cols].copy_from_slice(&sf.a[i * sf.cols..(i + 1) * sf.cols]);
            data[i * width + sf.cols] = sf.b[i];
        }
        let mut is_basic = vec![false; sf.cols];
        for &j in &sf.initial_basis {
            is_basic[j] = true;
        }
        Tableau {
            rows: sf.rows,
            width,
            data,
            basis: sf.initial_basis.clone(),
            is_basic,
        }
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.width + j]
    }

    fn rhs(&self, i: usize) -> f64 {
        self.at(i, self.width - 1)
    }

    fn reduced_costs(&self, cost: &[f64]) -> Vec<f64> {
        let mut d = cost.to_vec();
        for i in 0..self.rows {
            let cb = cost[self.basis[i]];
            if cb != 0.0 {
                let row = &self.data[i * self.width..i * self.width + cost.len()];
                d.iter_mut().zip(row).for_each(|(dj, &a)| *dj -= cb * a);
            }
        }
        d
    }

    fn pivot(&mut self, r: usize, e: usize, reduced: &mut [f64]) {
        let w = self.width;
        let piv = self.at(r, e);
        for v in &mut self.data[r * w..(r + 1) * w] {
            *v /= piv;
        }
        let pivot_row: Vec<f64> = self.data[r * w..(r + 1) * w].to_vec();
        for i in 0..self.rows {
            if i == r {
                continue;
            }
            let f = self.data[i * w + e];
            if f != 0.0 {
                let row = &mut self.data[i * w..(i + 1) * w];
                row.iter_mut().zip(&pivot_row).for_each(|(v, &p)| *v -= f * p);
                row[e] = 0.0;
                let rhs = &mut row[w - 1];
                if *rhs < 0.0 && *rhs > -1e-11 {
                    *rhs = 0.0;
                }
            }
        }
        let f = reduced[e];
        if f != 0.0 {
            reduced.iter_mut().zip(&pivot_row).for_each(|(d, &p)| *d -= f * p);
            reduced[e] = 0.0;
        }
        let leaving = self.basis[r];
        self.is_basic[leaving] = false;
        self.is_basic[e] = true;
        self.basis[r] = e;
    }
}

enum Outcome {
    Optimal,
    Unbounded,
}

/// Primal simplex. The column with the largest reduced cost enters (lowest index on ties); the
/// leaving row is chosen by the lexicographic ratio test over the rows of `B^-1`, which rules out
/// cycling on degenerate vertices.
fn run_simplex(
    t: &mut Tableau,
    cost: &[f64],
    enterable: usize,
    unit_cols: &[usize],
    opts: &LpOptions,
    pivots: &mut usize,
) -> Result<Outcome> {
    let mut reduced = t.reduced_costs(cost);
    loop {
        let mut entering = None;
        let mut best = OPTIMALITY_TOL;
        for j in 0..enterable {
            if !t.is_basic[j] && reduced[j] > best {
                best = reduced[j];
                entering = Some(j);
            }
        }
        let Some(e) = entering else {
            return Ok(Outcome::Optimal);
        };
        let Some(leave) = lexicographic_ratio(t, e, unit_cols, opts.pivot_tol) else {
            return Ok(Outcome::Unbounded);
        };
        t.pivot(leave, e, &mut reduced);
        *pivots += 1;
        if *pivots > opts.max_pivots {
            return Err(Error::Lp(format!("pivot limit {} reached", opts.max_pivots)));
        }
        if *pivots % 64 == 0 {
            reduced = t.reduced_costs(cost);
        }
    }
}

fn lexicographic_ratio(t: &Tableau, e: usize, unit_cols: &[usize], pivot_tol: f64) -> Option<usize> {
    let mut rows: Vec<usize> = (0..t.rows).filter(|&i| t.at(i, e) > pivot_tol).collect();
    if rows.is_empty() {
        return None;
    }
    let keep_min = |rows: &mut Vec<usize>, key: &dyn Fn(usize) -> f64| {
        let best = rows.iter().map(|&i| key(i)).fold(f64::INFINITY, f64::min);
        let tie = best + 1e-12 * (1.0 + best.abs());
        rows.retain(|&i| key(i) <= tie);
    };
    keep_min(&mut rows, &|i| t.rhs(i).max(0.0) / t.at(i, e));
    for &col in unit_cols {
        if rows.len() == 1 {
            break;
        }
        keep_min(&mut rows, &|i| t.at(i, col) / t.at(i, e));
    }
    rows.into_iter().min_by_key(|&i| t.basis[i])
}

/// Solves `a x = rhs` in place by Gaussian elimination with partial pivoting.
fn dense_solve(mut a: Vec<f64>, n: usize, rhs: &mut [f64]) -> bool {
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| a[i * n + k].abs().total_cmp(&a[j * n + k].abs()))
            .unwrap_or(k);
        if a[p * n + k].abs() < 1e-13 {
            return false;
        }
        if p != k {
            for c in 0..n {
                a.swap(k * n + c, p * n + c);
            }
            rhs.swap(k, p);
        }
        let piv = a[k * n + k];
        for i in k + 1..n {
            let f = a[i * n + k] / piv;
            if f != 0.0 {
                for c in k..n {
                    a[i * n + c] -= f * a[k * n + c];
                }
                rhs[i] -= f * rhs[k];
            }
        }
    }
    for k in (0..n).rev() {
        let s: f64 = (k + 1..n).map(|c| a[k * n + c] * rhs[c]).sum();
        rhs[k] = (rhs[k] - s) / a[k * n + k];
    }
    true
}

/// Recomputes basic values and duals from the original standard-form data.
fn basis_solution(sf: &StandardForm, t: &Tableau) -> (Vec<f64>, Vec<f64>) {
    let m = sf.rows;
    let mut bmat = vec![0.0; m * m];
    for i in 0..m {
        for (k, &j) in t.basis.iter().enumerate() {
            bmat[i * m + k] = sf.a[i * sf.cols + j];
        }
    }
    let mut xb = sf.b.clone();
    let mut pi: Vec<f64> = t.basis.iter().map(|&j| sf.c[j]).collect();
    let mut bt = vec![0.0; m * m];
    for i in 0..m {
        for k in 0..m {
            bt[k * m + i] = bmat[i * m + k];
        }
    }
    let ok = dense_solve(bmat, m, &mut xb) && dense_solve(bt, m, &mut pi);
    if !ok || xb.iter().any(|v| !v.is_finite() || *v < -1e-7) {
        // Fall back to the tableau's running values.
        xb = (0..m).map(|i| t.rhs(i)).collect();
        pi = vec![0.0; m];
        let cb: Vec<f64> = t.basis.iter().map(|&j| sf.c[j]).collect();
        // pi^T = c_B^T B^-1; the slack/artificial identity columns of the tableau hold B^-1.
        for i in 0..m {
            let unit = sf.initial_basis[i];
            pi[i] = (0..m).map(|r| cb[r] * t.at(r, unit)).sum();
        }
    }
    let mut x = vec![0.0; sf.cols];
    for (k, &j) in t.basis.iter().enumerate() {
        x[j] = xb[k].max(0.0);
    }
    (x, pi)
}

pub fn solve_lp_with(problem: &LpProblem, opts: &LpOptions) -> Result<LpSolution> {
    problem.check()?;
    let nnz = problem.nonzeros();
    if nnz > opts.max_nonzeros {
        return Err(Error::ResourceLimit {
            what: "LP nonzeros",
            actual: nnz as u128,
            limit: opts.max_nonzeros as u128,
        });
    }
    let sf = standard_form(problem);
    let mut t = Tableau::new(&sf);
    let mut pivots = 0;
    let failed = |status| LpSolution {
        status,
        primal: vec![0.0; problem.num_vars()],
        duals: vec![0.0; problem.constraints().len()],
        objective: f64::NAN,
        pivots: 0,
    };

    if sf.first_artificial < sf.cols {
        let mut phase1 = vec![0.0; sf.cols];
        phase1[sf.first_artificial..].iter_mut().for_each(|c| *c = -1.0);
        run_simplex(&mut t, &phase1, sf.cols, &sf.initial_basis, opts, &mut pivots)?;
        let infeasibility: f64 = (0..t.rows)
            .filter(|&i| t.basis[i] >= sf.first_artificial)
            .map(|i| t.rhs(i))
            .sum();
        let scale = 1.0 + sf.b.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if infeasibility > opts.feasibility_tol * scale {
            return Ok(LpSolution { pivots, ..failed(LpStatus::Infeasible) });
        }
        // Drive zero-level artificials out where a structural or slack column can replace them.
        let mut scratch = vec![0.0; sf.cols];
        for i in 0..t.rows {
            if t.basis[i] < sf.first_artificial {
                continue;
            }
            let candidate = (0..sf.first_artificial)
                .filter(|&j| !t.is_basic[j] && t.at(i, j).abs() > opts.pivot_tol)
                .max_by(|&a, &b| t.at(i, a).abs().total_cmp(&t.at(i, b).abs()));
            if let Some(j) = candidate {
                t.pivot(i, j, &mut scratch);
                pivots += 1;
            }
        }
    }

    match run_simplex(&mut t, &sf.c, sf.first_artificial, &sf.initial_basis, opts, &mut pivots)? {
        Outcome::Unbounded => return Ok(LpSolution { pivots, ..failed(LpStatus::Unbounded) }),
        Outcome::Optimal => {}
    }

    let (x_std, pi) = basis_solution(&sf, &t);
    let primal: Vec<f64> = sf
        .vars
        .iter()
        .map(|map| map.offset + map.terms.iter().map(|&(col, k)| k * x_std[col]).sum::<f64>())
        .collect();
    let sense = match problem.sense() {
        Sense::Max => 1.0,
        Sense::Min => -1.0,
    };
    let duals = (0..problem.constraints().len())
        .map(|i| sense * sf.row_sign[i] * pi[i])
        .collect();
    let objective = problem.objective().iter().zip(&primal).map(|(c, x)| c * x).sum();
    Ok(LpSolution {
        status: LpStatus::Optimal,
        primal,
        duals,
        objective,
        pivots,
    })
}
