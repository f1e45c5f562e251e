use serde::{Deserialize, Serialize};

use super::{solve_cor34, solve_cor35, solve_theorem31, RadiusResult};
use crate::{round_sig6, Result};

/// Rows whose `|delta_r|` or `|delta_sigma|` exceed this are flagged.
pub const DISCREPANCY_THRESHOLD: f64 = 2e-3;

pub const CSV_HEADER: &str = "M,alpha,r,sigma,paper_r,paper_sigma,delta_r,delta_sigma";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TableId {
    /// `r₁`, `σ₁` for order 2.
    T1,
    /// `r₁`, `σ₁` for order 3.
    T2,
    /// Order-2 closed form.
    T3,
    /// Order-3 closed form.
    T4,
}

struct Published {
    alpha: usize,
    m: [f64; 8],
    r: [f64; 8],
    sigma: [f64; 8],
}

const M_FROM_1_5: [f64; 8] = [1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0];
const M_FROM_2: [f64; 8] = [2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0, 5.5];

impl TableId {
    pub const ALL: [TableId; 4] = [TableId::T1, TableId::T2, TableId::T3, TableId::T4];

    fn published(self) -> Published {
        match self {
            TableId::T1 => Published {
                alpha: 2,
                m: M_FROM_1_5,
                r: [
                    0.2450, 0.1550, 0.1120, 0.0875, 0.0712, 0.0598, 0.0515, 0.0452,
                ],
                sigma: [
                    0.0133, 0.0846, 0.0572, 0.0410, 0.0312, 0.0246, 0.0199, 0.0164,
                ],
            },
            TableId::T2 => Published {
                alpha: 3,
                m: M_FROM_2,
                r: [
                    0.1600, 0.1140, 0.0880, 0.0710, 0.0590, 0.0505, 0.0370, 0.0340,
                ],
                sigma: [
                    0.0940, 0.0600, 0.0425, 0.0320, 0.0252, 0.0205, 0.0155, 0.0120,
                ],
            },
            TableId::T3 => Published {
                alpha: 2,
                m: M_FROM_1_5,
                r: [
                    0.4562, 0.3028, 0.2285, 0.1872, 0.1596, 0.1399, 0.1251, 0.1135,
                ],
                sigma: [
                    0.2078, 0.1095, 0.0689, 0.0486, 0.0363, 0.0284, 0.0228, 0.0189,
                ],
            },
            TableId::T4 => Published {
                alpha: 3,
                m: M_FROM_1_5,
                r: [
                    0.3817, 0.2403, 0.1732, 0.1348, 0.1102, 0.0935, 0.0814, 0.0720,
                ],
                sigma: [
                    0.1458, 0.0693, 0.0398, 0.0255, 0.0178, 0.0130, 0.0099, 0.0078,
                ],
            },
        }
    }

    fn solve(self, m: f64, alpha: usize) -> Result<RadiusResult> {
        match self {
            TableId::T1 | TableId::T2 => solve_theorem31(m, alpha),
            TableId::T3 => solve_cor34(m),
            TableId::T4 => solve_cor35(m),
        }
    }
}

/// A computed radius pair next to the published one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    #[serde(rename = "M")]
    pub m: f64,
    pub alpha: usize,
    pub r: f64,
    pub sigma: f64,
    pub paper_r: f64,
    pub paper_sigma: f64,
    /// `r − paper_r`.
    pub delta_r: f64,
    /// `sigma − paper_sigma`.
    pub delta_sigma: f64,
    pub flagged: bool,
}

pub fn make_table(which: TableId) -> Result<Vec<TableRow>> {
    let p = which.published();
    (0..p.m.len())
        .map(|i| {
            let res = which.solve(p.m[i], p.alpha)?;
            let delta_r = res.r - p.r[i];
            let delta_sigma = res.sigma - p.sigma[i];
            Ok(TableRow {
                m: p.m[i],
                alpha: p.alpha,
                r: res.r,
                sigma: res.sigma,
                paper_r: p.r[i],
                paper_sigma: p.sigma[i],
                delta_r,
                delta_sigma,
                flagged: delta_r.abs() > DISCREPANCY_THRESHOLD
                    || delta_sigma.abs() > DISCREPANCY_THRESHOLD,
            })
        })
        .collect()
}

pub fn to_csv(rows: &[TableRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        let fields = [
            row.m,
            row.alpha as f64,
            row.r,
            row.sigma,
            row.paper_r,
            row.paper_sigma,
            row.delta_r,
            row.delta_sigma,
        ];
        let line: Vec<String> = fields.iter().map(|&x| round_sig6(x).to_string()).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}
