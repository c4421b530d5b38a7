//! JSON-facing record types and their conversions from and to core types.
//! Words and configurations serialize as the textual literals the CLI
//! accepts, so records are self-contained and every certificate can be
//! re-loaded and re-verified.

use anyhow::{anyhow, Result};
use serde::{Deserialize, Serialize};

use ca_core::alphabet::Alphabet;
use ca_core::config::{format_config, parse_config, Configuration, EventualPeriod};
use ca_core::debruijn::{InjectivityReport, SurjectivityReport};
use ca_core::dynamics::Window;
use ca_core::equicontinuity::{
    BlockingCertificate, CertifiedRows, EquiStatus, KurkaReport, UpToBounds,
};
use ca_core::factors::PeriodicFactor;
use ca_core::gilman::{GilmanClass, GilmanReport, RatioCurve, RatioPoint};
use ca_core::stp::{NonPeriodicEvidence, StpCertificate};
use ca_core::word::{format_word, parse_word, Word};

fn word_str(a: &Alphabet, w: &[ca_core::alphabet::Letter]) -> String {
    format_word(a, w)
}

fn config_str(a: &Alphabet, c: &Configuration) -> String {
    format_config(a, c)
}

/// An analysis slot: either it ran or it was explicitly skipped.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "status", content = "value", rename_all = "snake_case")]
pub enum Analysis<T> {
    Skipped,
    Ok(T),
}

impl<T> Analysis<T> {
    pub fn value(&self) -> Option<&T> {
        match self {
            Analysis::Skipped => None,
            Analysis::Ok(v) => Some(v),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PeriodDto {
    pub preperiod: u64,
    pub period: u64,
}

impl From<EventualPeriod> for PeriodDto {
    fn from(e: EventualPeriod) -> Self {
        PeriodDto {
            preperiod: e.preperiod,
            period: e.period,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SurjectivityDto {
    pub surjective: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<UnbalancedDto>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct UnbalancedDto {
    pub word: String,
    pub count: u64,
    pub expected: u64,
}

pub fn surjectivity_dto(a: &Alphabet, r: &SurjectivityReport) -> SurjectivityDto {
    SurjectivityDto {
        surjective: r.surjective,
        witness: r.witness.as_ref().map(|w| UnbalancedDto {
            word: word_str(a, &w.word),
            count: w.count,
            expected: w.expected,
        }),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct InjectivityDto {
    pub injective: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<PairDto>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PairDto {
    pub a: String,
    pub b: String,
}

pub fn injectivity_dto(a: &Alphabet, r: &InjectivityReport) -> InjectivityDto {
    InjectivityDto {
        injective: r.injective,
        witness: r.witness.as_ref().map(|(x, y)| PairDto {
            a: config_str(a, &Configuration::Periodic(x.clone())),
            b: config_str(a, &Configuration::Periodic(y.clone())),
        }),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BlockingCertDto {
    pub word: String,
    pub s: usize,
    pub offset: usize,
    pub preperiod: u64,
    pub period: u64,
    pub rows: Vec<String>,
}

pub fn blocking_cert_dto(a: &Alphabet, c: &BlockingCertificate) -> BlockingCertDto {
    BlockingCertDto {
        word: word_str(a, &c.word),
        s: c.s,
        offset: c.offset,
        preperiod: c.rows.period.preperiod,
        period: c.rows.period.period,
        rows: c.rows.rows.iter().map(|r| word_str(a, r)).collect(),
    }
}

pub fn blocking_cert_from_dto(a: &Alphabet, d: &BlockingCertDto) -> Result<BlockingCertificate> {
    let rows: Result<Vec<Word>, _> = d.rows.iter().map(|r| parse_word(a, r)).collect();
    Ok(BlockingCertificate {
        word: parse_word(a, &d.word).map_err(|e| anyhow!("{e}"))?,
        s: d.s,
        offset: d.offset,
        rows: CertifiedRows {
            rows: rows.map_err(|e| anyhow!("{e}"))?,
            period: EventualPeriod::new(d.preperiod, d.period),
        },
    })
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct KurkaDto {
    pub has_equicontinuity_points: String,
    pub equicontinuous: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub map_period: Option<PeriodDto>,
    pub sensitive_candidate: bool,
    pub certificates: Vec<BlockingCertDto>,
}

pub fn kurka_dto(a: &Alphabet, r: &KurkaReport) -> KurkaDto {
    KurkaDto {
        has_equicontinuity_points: match r.has_equicontinuity_points {
            UpToBounds::Yes => "yes".into(),
            UpToBounds::NoUpToBounds => "no_up_to_bounds".into(),
        },
        equicontinuous: match r.equicontinuous {
            EquiStatus::Periodic(_) => "yes".into(),
            EquiStatus::NoUpToBounds => "no_up_to_bounds".into(),
        },
        map_period: match r.equicontinuous {
            EquiStatus::Periodic(ep) => Some(ep.into()),
            EquiStatus::NoUpToBounds => None,
        },
        sensitive_candidate: r.sensitive_candidate,
        certificates: r.certificates.iter().map(|c| blocking_cert_dto(a, c)).collect(),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RatioPointDto {
    pub n: i64,
    pub ratio: f64,
    pub half_width: f64,
    pub samples: u64,
}

impl From<&RatioPoint> for RatioPointDto {
    fn from(p: &RatioPoint) -> Self {
        RatioPointDto {
            n: p.n,
            ratio: p.ratio,
            half_width: p.half_width,
            samples: p.samples,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CurveDto {
    pub m: i64,
    pub point: String,
    pub points: Vec<RatioPointDto>,
}

fn curve_dto(a: &Alphabet, point: &ca_core::config::PeriodicConfig, c: &RatioCurve) -> CurveDto {
    CurveDto {
        m: c.m,
        point: config_str(a, &Configuration::Periodic(point.clone())),
        points: c.points.iter().map(Into::into).collect(),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GilmanDto {
    pub class: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<BlockingCertDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b_witness: Option<CurveDto>,
    pub curves: Vec<CurveDto>,
    pub statistical: bool,
}

pub fn gilman_dto(a: &Alphabet, r: &GilmanReport) -> GilmanDto {
    GilmanDto {
        class: match r.class {
            GilmanClass::A => "A".into(),
            GilmanClass::B => "B".into(),
            GilmanClass::C => "C".into(),
            GilmanClass::Inconclusive => "inconclusive".into(),
        },
        certificate: r.certificate.as_ref().map(|c| blocking_cert_dto(a, c)),
        b_witness: r.b_witness.as_ref().map(|(p, c)| curve_dto(a, p, c)),
        curves: r.curves.iter().map(|(p, c)| curve_dto(a, p, c)).collect(),
        statistical: !matches!(r.class, GilmanClass::A),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct StpCertDto {
    pub point: String,
    pub temporal_period: u64,
    pub seed_preperiod: u64,
    pub w: String,
    pub u: String,
    pub v: String,
    pub evidence: String,
}

pub fn stp_cert_dto(a: &Alphabet, c: &StpCertificate) -> StpCertDto {
    StpCertDto {
        point: config_str(a, &Configuration::TwoSided(c.point.clone())),
        temporal_period: c.temporal_period,
        seed_preperiod: c.seed_preperiod,
        w: word_str(a, &c.ingredients.0),
        u: word_str(a, &c.ingredients.1),
        v: word_str(a, &c.ingredients.2),
        evidence: match c.not_spatially_periodic {
            NonPeriodicEvidence::CenterNonempty { .. } => "center_nonempty".into(),
            NonPeriodicEvidence::TailMismatch => "tail_mismatch".into(),
        },
    }
}

pub fn stp_cert_from_dto(a: &Alphabet, d: &StpCertDto) -> Result<StpCertificate> {
    let point = match parse_config(a, &d.point).map_err(|e| anyhow!("{e}"))? {
        Configuration::TwoSided(t) => t,
        Configuration::Periodic(_) => {
            return Err(anyhow!("stp point must be a two-sided literal"))
        }
    };
    let evidence = if point.center_len() > 0 {
        NonPeriodicEvidence::CenterNonempty {
            len: point.center_len(),
        }
    } else {
        NonPeriodicEvidence::TailMismatch
    };
    Ok(StpCertificate {
        point,
        temporal_period: d.temporal_period,
        seed_preperiod: d.seed_preperiod,
        not_spatially_periodic: evidence,
        ingredients: (
            parse_word(a, &d.w).map_err(|e| anyhow!("{e}"))?,
            parse_word(a, &d.u).map_err(|e| anyhow!("{e}"))?,
            parse_word(a, &d.v).map_err(|e| anyhow!("{e}"))?,
        ),
    })
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct FactorDto {
    pub p: u64,
    pub m: u64,
    pub window: (i64, i64),
    pub class_words: Vec<String>,
    pub x: String,
}

pub fn factor_dto(a: &Alphabet, f: &PeriodicFactor) -> FactorDto {
    FactorDto {
        p: f.period,
        m: f.preperiod,
        window: (f.window.lo, f.window.hi),
        class_words: f.class_words.iter().map(|w| word_str(a, w)).collect(),
        x: config_str(a, &f.generator),
    }
}

pub fn factor_from_dto(a: &Alphabet, d: &FactorDto) -> Result<PeriodicFactor> {
    let class_words: Result<Vec<Word>, _> =
        d.class_words.iter().map(|w| parse_word(a, w)).collect();
    Ok(PeriodicFactor {
        period: d.p,
        preperiod: d.m,
        window: Window::new(d.window.0, d.window.1),
        class_words: class_words.map_err(|e| anyhow!("{e}"))?,
        generator: parse_config(a, &d.x).map_err(|e| anyhow!("{e}"))?,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct FactorsDto {
    pub factors: Vec<FactorDto>,
    pub period_spectrum: Vec<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct StpDto {
    pub certificates: Vec<StpCertDto>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BlockingDto {
    pub certificates: Vec<BlockingCertDto>,
}

/// Bounds echoed into every record.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ParamsDto {
    pub seed: u64,
    pub blocking_s: usize,
    pub max_blocking_len: usize,
    pub equi_max_set_states: usize,
    pub equi_max_set_size: usize,
    pub equi_max_mp: u32,
    pub equi_mp_work_cap: u64,
    pub gilman_horizon: u64,
    pub gilman_samples: u64,
    pub gilman_n_factors: Vec<i64>,
    pub gilman_b_threshold: f64,
    pub gilman_c_threshold: f64,
    pub gilman_candidate_max_len: usize,
    pub stp_max_ingredient: usize,
    pub stp_max_word_len: usize,
    pub stp_max_steps: u64,
    pub max_center: usize,
    pub factor_horizon_multiplier: u64,
}

/// Deterministic work counters (no wall-clock content, so records are
/// byte-stable across runs and parallelism levels).
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct WorkDto {
    pub blocking_candidates: u64,
    pub stp_pairs_tried: u64,
    pub gilman_points: u64,
    pub factor_probes: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SurveyRecord {
    pub id: String,
    pub params: ParamsDto,
    pub surjectivity: Analysis<SurjectivityDto>,
    pub injectivity: Analysis<InjectivityDto>,
    pub blocking: Analysis<BlockingDto>,
    pub kurka: Analysis<KurkaDto>,
    pub gilman: Analysis<GilmanDto>,
    pub stp: Analysis<StpDto>,
    pub factors: Analysis<FactorsDto>,
    pub work: WorkDto,
}
