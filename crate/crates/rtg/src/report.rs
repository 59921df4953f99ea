//! JSON shapes for exact quantities: rationals as numerator/denominator
//! strings with a decimal rendering, partitions as sorted blocks, and
//! the full bound report.

use num_bigint::BigInt;
use num_rational::BigRational;
use rtg_core::goodness::BoundReport;
use rtg_core::Partition;
use serde::{Deserialize, Serialize};

/// Exact rational: `num`/`den` as decimal strings (arbitrary precision)
/// plus a human-readable decimal approximation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
    pub decimal: String,
}

impl From<&BigRational> for RationalJson {
    fn from(value: &BigRational) -> RationalJson {
        RationalJson {
            num: value.numer().to_string(),
            den: value.denom().to_string(),
            decimal: rtg_core::decimal_approx(value),
        }
    }
}

impl RationalJson {
    pub fn to_rational(&self) -> Option<BigRational> {
        let num: BigInt = self.num.parse().ok()?;
        let den: BigInt = self.den.parse().ok()?;
        Some(BigRational::new(num, den))
    }
}

/// Partitions serialize as sorted lists of sorted blocks.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartitionJson {
    pub domain: Vec<usize>,
    pub blocks: Vec<Vec<usize>>,
    pub class_count: usize,
}

impl From<&Partition> for PartitionJson {
    fn from(p: &Partition) -> PartitionJson {
        PartitionJson {
            domain: p.domain().to_vec(),
            blocks: p.blocks().to_vec(),
            class_count: p.class_count(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AasHypothesesJson {
    pub window_ratio_ok: bool,
    pub n_large_enough: bool,
    pub proposition_ok: bool,
}

/// JSON form of [`BoundReport`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundReportJson {
    pub k: u32,
    pub n: usize,
    pub ell: usize,
    pub delta: RationalJson,
    pub non_good_seq_upper: RationalJson,
    pub good_graph_lower: RationalJson,
    pub good_graph_lower_vacuous: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub non_good_fraction_upper: Option<RationalJson>,
    pub hypotheses: AasHypothesesJson,
    pub aas_log2: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aas_decimal: Option<f64>,
}

impl From<&BoundReport> for BoundReportJson {
    fn from(r: &BoundReport) -> BoundReportJson {
        BoundReportJson {
            k: r.k,
            n: r.n,
            ell: r.ell,
            delta: (&r.delta).into(),
            non_good_seq_upper: (&r.non_good_seq_upper).into(),
            good_graph_lower: (&r.good_graph_lower).into(),
            good_graph_lower_vacuous: r.good_graph_lower_vacuous,
            non_good_fraction_upper: r.non_good_fraction_upper.as_ref().map(RationalJson::from),
            hypotheses: AasHypothesesJson {
                window_ratio_ok: r.hypotheses.window_ratio_ok,
                n_large_enough: r.hypotheses.n_large_enough,
                proposition_ok: r.hypotheses.proposition_ok,
            },
            aas_log2: r.aas.log2,
            aas_decimal: r.aas.decimal,
        }
    }
}
