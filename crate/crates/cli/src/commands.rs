//! The five subcommands, each producing a tabular report plus an exit code.

use serde_json::Value;

use qrobust::ketparse::parse_ket;
use qrobust::robustness::{dcrit_cut, ghz_scrit, ghz_scrit_limit};
use qrobust::separability::{
    enumerate_cuts, is_entangled_npt, partial_trace, schmidt_rank, von_neumann_entropy, PPT_TOL,
};
use qrobust::squeezing::{
    one_axis_twist, scrit_squeezed, twist_scan_min, xi_after_depolarization, xi_squared,
};
use qrobust::states::{density_of, ghz, named_state, NamedState, QubitSubset, StateVector};
use qrobust::channels::{depolarize, probabilistic_measure, DepolarizationLevel};
use qrobust::{Error, Result};

use crate::output::{num_param, Cell, Report};

/// Negativity below this threshold counts as zero when issuing an
/// entangled/not-entangled verdict.
const VERDICT_TOL: f64 = 1e-13;

pub struct CommandOutput {
    pub report: Report,
    /// Messages for stderr (verification diffs).
    pub diagnostics: Vec<String>,
    pub exit_code: i32,
}

fn ok(report: Report) -> CommandOutput {
    CommandOutput {
        report,
        diagnostics: Vec::new(),
        exit_code: 0,
    }
}

/// Built-in reference values for the critical-depolarization table.
///
/// Note: recomputation reproduces eight of the ten cells; the W4 and X4
/// reference rows disagree with the recomputed values for the caption's own
/// state definitions (they match with the two rows interchanged), so this
/// command exits 1 with a per-cell diff unless that ever changes.
const TABLE_REFERENCE: [(NamedState, CutClass, f64); 10] = [
    (NamedState::G3, CutClass::OneTwo, 0.443),
    (NamedState::W3, CutClass::OneTwo, 0.425),
    (NamedState::G4, CutClass::OneThree, 0.423),
    (NamedState::G4, CutClass::TwoTwo, 0.489),
    (NamedState::W4, CutClass::OneThree, 0.423),
    (NamedState::W4, CutClass::TwoTwo, 0.423),
    (NamedState::X4, CutClass::OneThree, 0.416),
    (NamedState::X4, CutClass::TwoTwo, 0.453),
    (NamedState::B4, CutClass::OneThree, 0.468),
    (NamedState::B4, CutClass::TwoTwo, 0.450),
];

#[derive(Clone, Copy, PartialEq, Eq)]
enum CutClass {
    OneTwo,
    OneThree,
    TwoTwo,
}

impl CutClass {
    fn label(&self) -> &'static str {
        match self {
            CutClass::OneTwo => "1-2",
            CutClass::OneThree => "1-3",
            CutClass::TwoTwo => "2-2",
        }
    }

    fn matches(&self, cut: &QubitSubset) -> bool {
        let small = cut.len().min(cut.n_qubits() - cut.len());
        match self {
            CutClass::OneTwo | CutClass::OneThree => small == 1,
            CutClass::TwoTwo => small == 2,
        }
    }
}

/// Largest critical d over the cuts of a class; cuts that start out PPT
/// contribute zero.
fn dcrit_class(psi: &StateVector, class: CutClass, tol: f64) -> Result<f64> {
    let mut best = 0.0f64;
    for cut in enumerate_cuts(psi.n_qubits())? {
        if !class.matches(&cut) {
            continue;
        }
        let d = match dcrit_cut(psi, &cut, tol) {
            Ok(d) => d,
            Err(Error::NotEntangledAtZero) => 0.0,
            Err(e) => return Err(e),
        };
        best = best.max(d);
    }
    Ok(best)
}

pub fn table1(tol: f64, seed: u64) -> Result<CommandOutput> {
    let mut rows = Vec::new();
    let mut diagnostics = Vec::new();
    for (state, class, reference) in TABLE_REFERENCE {
        let computed = dcrit_class(&named_state(state), class, tol)?;
        rows.push(vec![
            Cell::Text(state.name().into()),
            Cell::Text(class.label().into()),
            Cell::Num(computed),
        ]);
        if (computed - reference).abs() > 1e-3 {
            diagnostics.push(format!(
                "table1 mismatch: {} {}: computed {:.6}, reference {:.3}, |diff| {:.4}",
                state.name(),
                class.label(),
                computed,
                reference,
                (computed - reference).abs()
            ));
        }
    }
    let exit_code = if diagnostics.is_empty() { 0 } else { 1 };
    Ok(CommandOutput {
        report: Report {
            command: "table1",
            params: vec![("tol", num_param(tol)), ("seed", Value::from(seed))],
            columns: vec!["state", "cut", "d_crit"],
            rows,
        },
        diagnostics,
        exit_code,
    })
}

pub fn ghz_curve(n_max: usize, tol: f64, seed: u64) -> Result<CommandOutput> {
    if !(2..=64).contains(&n_max) {
        return Err(Error::SizeOutOfRange {
            what: "n",
            value: n_max,
            min: 2,
            max: 64,
        });
    }
    let mut rows = Vec::new();
    for n in 2..=n_max {
        let s = ghz_scrit(n)?;
        let numeric = if n <= 8 {
            let balanced = QubitSubset::new(n, 1..=n / 2)?;
            Cell::Num(dcrit_cut(&ghz(n)?, &balanced, tol)?)
        } else {
            Cell::Empty
        };
        rows.push(vec![
            Cell::Text(n.to_string()),
            Cell::Num(s),
            Cell::Num(1.0 - s),
            numeric,
        ]);
    }
    let lim = ghz_scrit_limit();
    rows.push(vec![
        Cell::Text("inf".into()),
        Cell::Num(lim),
        Cell::Num(1.0 - lim),
        Cell::Empty,
    ]);
    Ok(ok(Report {
        command: "ghz-curve",
        params: vec![
            ("n", Value::from(n_max)),
            ("tol", num_param(tol)),
            ("seed", Value::from(seed)),
        ],
        columns: vec!["n", "s_crit", "d_crit", "d_crit_numeric"],
        rows,
    }))
}

pub enum StateSelector {
    Named(String),
    Expr(String),
}

impl StateSelector {
    fn resolve(&self) -> Result<(StateVector, &'static str, String)> {
        match self {
            StateSelector::Named(name) => {
                let named: NamedState = name.parse()?;
                Ok((named_state(named), "state", named.name().to_string()))
            }
            StateSelector::Expr(text) => Ok((parse_ket(text, true)?, "state_expr", text.clone())),
        }
    }
}

pub fn analyze(selector: &StateSelector, d: f64, seed: u64) -> Result<CommandOutput> {
    let (psi, sel_key, sel_value) = selector.resolve()?;
    let clean = density_of(&psi);
    let noisy = depolarize(
        &clean,
        &QubitSubset::full(psi.n_qubits()),
        DepolarizationLevel::new(d)?,
    )?;
    let (pt_reports, _) = is_entangled_npt(&noisy, PPT_TOL)?;
    let mut rows = Vec::new();
    for r in pt_reports {
        let rank = schmidt_rank(&psi, &r.cut, 1e-9)?;
        let entropy = von_neumann_entropy(&partial_trace(&noisy, &r.cut)?)?;
        rows.push(vec![
            Cell::Text(r.cut.label()),
            Cell::Num(r.min_pt_eigenvalue),
            Cell::Bool(r.is_ppt),
            Cell::Int(rank as i64),
            Cell::Num(entropy),
        ]);
    }
    Ok(ok(Report {
        command: "analyze",
        params: vec![
            (sel_key, Value::String(sel_value)),
            ("d", num_param(d)),
            ("seed", Value::from(seed)),
        ],
        columns: vec!["cut", "min_pt_eigenvalue", "ppt", "schmidt_rank", "entropy"],
        rows,
    }))
}

pub enum MuArg {
    Value(f64),
    Scan,
}

pub fn squeeze(n: usize, mu: &MuArg, s: f64, seed: u64) -> Result<CommandOutput> {
    if !(s > 0.0 && s <= 1.0) {
        return Err(Error::OutOfRange(format!("s = {s} outside (0, 1]")));
    }
    let (mu_value, sq) = match mu {
        MuArg::Value(mu) => {
            let psi = one_axis_twist(n, *mu)?;
            (*mu, xi_squared(&density_of(&psi))?)
        }
        MuArg::Scan => twist_scan_min(n, 200)?,
    };
    let xi_s = xi_after_depolarization(sq.xi_squared, sq.zeta, s)?;
    let (bound_s, bound_d) = if sq.xi_squared <= 1.0 {
        let b = scrit_squeezed(sq.zeta, sq.xi_squared)?;
        (Cell::Num(b), Cell::Num(1.0 - b))
    } else {
        // Beyond xi^2 = 1 the closed-form bound certifies nothing.
        (Cell::Empty, Cell::Empty)
    };
    let row = vec![
        Cell::Num(mu_value),
        Cell::Num(sq.xi_squared),
        Cell::Num(sq.zeta),
        Cell::Num(xi_s),
        bound_s,
        bound_d,
    ];
    Ok(ok(Report {
        command: "squeeze",
        params: vec![
            ("n", Value::from(n)),
            (
                "mu",
                match mu {
                    MuArg::Value(m) => num_param(*m),
                    MuArg::Scan => Value::String("scan".into()),
                },
            ),
            ("s", num_param(s)),
            ("seed", Value::from(seed)),
        ],
        columns: vec!["mu", "xi0_sq", "zeta", "xi_s_sq", "scrit_bound", "dcrit_bound"],
        rows: vec![row],
    }))
}

pub fn measure_ghz(n: usize, p: f64, seed: u64) -> Result<CommandOutput> {
    if n > 10 {
        return Err(Error::SizeOutOfRange {
            what: "n",
            value: n,
            min: 2,
            max: 10,
        });
    }
    let rho = probabilistic_measure(&density_of(&ghz(n)?), p)?;
    let predicted = -(1.0f64 - p).powi(n as i32) / 2.0;
    let (reports, entangled) = is_entangled_npt(&rho, VERDICT_TOL)?;
    let rows = reports
        .into_iter()
        .map(|r| {
            vec![
                Cell::Text(r.cut.label()),
                Cell::Num(r.min_pt_eigenvalue),
                Cell::Num(predicted),
                Cell::Bool(!r.is_ppt),
            ]
        })
        .collect();
    Ok(ok(Report {
        command: "measure-ghz",
        params: vec![
            ("n", Value::from(n)),
            ("p", num_param(p)),
            ("entangled", Value::Bool(entangled)),
            ("seed", Value::from(seed)),
        ],
        columns: vec!["cut", "min_pt_eigenvalue", "predicted", "npt"],
        rows,
    }))
}
