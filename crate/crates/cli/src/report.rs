//! JSON renderings of library results, schema `swanlab/1`.

use serde::Serialize;
use swanlab::differentials::{GradedForm, NormalFormBGr, Variant};
use swanlab::expr::{render_graded, render_residue, render_witt};
use swanlab::field::{FieldConfig, LaurentElem, LaurentRing, ResidueField};
use swanlab::ramification::{ConductorReport, RefinedModified, TheoremValue};
use swanlab::witt::WittVec;
use swanlab::Error;

pub const SCHEMA: &str = "swanlab/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    OutOfTheoremRange,
    UnsupportedRange,
    BudgetExceeded,
    NotInBgr,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::OutOfTheoremRange | Status::UnsupportedRange => 2,
            Status::BudgetExceeded => 3,
            Status::NotInBgr | Status::Error => 1,
        }
    }

    pub fn of_error(e: &Error) -> Self {
        match e {
            Error::OutOfTheoremRange(_) => Status::OutOfTheoremRange,
            Error::UnsupportedRange(_) => Status::UnsupportedRange,
            Error::ReductionBudgetExceeded { .. } => Status::BudgetExceeded,
            Error::NotInBGr(_) => Status::NotInBgr,
            _ => Status::Error,
        }
    }

    /// The more severe of two statuses, ordered by exit code.
    pub fn worst(self, other: Status) -> Status {
        let rank = |s: Status| match s {
            Status::Ok => 0,
            Status::OutOfTheoremRange | Status::UnsupportedRange => 1,
            Status::BudgetExceeded => 2,
            Status::NotInBgr | Status::Error => 3,
        };
        if rank(other) > rank(self) {
            other
        } else {
            self
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GradedJson {
    pub n: i64,
    pub variant: Variant,
    pub alpha: String,
    pub beta: String,
    pub text: String,
}

impl GradedJson {
    pub fn new(field: &ResidueField, g: &GradedForm) -> Self {
        GradedJson {
            n: g.n,
            variant: g.variant,
            alpha: render_residue(field, &g.alpha.f),
            beta: render_residue(field, &g.beta),
            text: render_graded(field, g),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NormalFormJson {
    pub n: i64,
    pub variant: Variant,
    pub x: String,
    /// layers[j][k-1] is the coefficient of layer j and p-basis power k.
    pub layers: Vec<Vec<String>>,
}

impl NormalFormJson {
    pub fn new(field: &ResidueField, nf: &NormalFormBGr) -> Self {
        NormalFormJson {
            n: nf.n,
            variant: nf.variant,
            x: render_residue(field, &nf.x),
            layers: nf
                .layers
                .iter()
                .map(|row| row.iter().map(|c| render_residue(field, c)).collect())
                .collect(),
        }
    }
}

/// Conductor outputs a caller may request.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Deserialize, Serialize, clap::ValueEnum,
)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Output {
    Sw,
    Rsw,
    SwMod,
    RswMod,
    Slope,
    LogSlope,
    CharPoint,
    LogCharPoint,
    NormalForms,
}

impl Output {
    pub const ALL: [Output; 9] = [
        Output::Sw,
        Output::Rsw,
        Output::SwMod,
        Output::RswMod,
        Output::Slope,
        Output::LogSlope,
        Output::CharPoint,
        Output::LogCharPoint,
        Output::NormalForms,
    ];
}

#[derive(Debug, Clone, Serialize)]
pub struct ConductorJson {
    pub schema: &'static str,
    pub command: &'static str,
    pub status: Status,
    pub field: FieldConfig,
    pub input: Vec<String>,
    pub reduced: Vec<String>,
    pub reduction_iterations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sw: Option<i64>,
    #[serde(skip_serializing_if = "Skip::skip")]
    pub rsw: Field<GradedJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sw_mod: Option<i64>,
    #[serde(skip_serializing_if = "Skip::skip")]
    pub rsw_mod: Field<GradedJson>,
    #[serde(skip_serializing_if = "Skip::skip")]
    pub log_slope: Field<i64>,
    #[serde(skip_serializing_if = "Skip::skip")]
    pub slope: Field<i64>,
    #[serde(skip_serializing_if = "Skip::skip")]
    pub log_char_point: Field<GradedJson>,
    #[serde(skip_serializing_if = "Skip::skip")]
    pub char_point: Field<GradedJson>,
    #[serde(skip_serializing_if = "Skip::skip")]
    pub rsw_normal_form: Field<NormalFormJson>,
    #[serde(skip_serializing_if = "Skip::skip")]
    pub rsw_mod_normal_form: Field<NormalFormJson>,
    pub notes: Vec<String>,
}

/// A requested output: omitted when not requested, `null` when absent.
#[derive(Debug, Clone)]
pub enum Field<T> {
    NotRequested,
    Value(Option<T>),
}

impl<T: Serialize> Serialize for Field<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Field::NotRequested | Field::Value(None) => s.serialize_none(),
            Field::Value(Some(v)) => v.serialize(s),
        }
    }
}

pub trait Skip {
    fn skip(&self) -> bool;
}

impl<T> Skip for Field<T> {
    fn skip(&self) -> bool {
        matches!(self, Field::NotRequested)
    }
}

/// Record an out-of-range theorem value among the requested outputs.
fn note<T>(status: &mut Status, notes: &mut Vec<String>, requested: bool, value: &TheoremValue<T>) {
    if let (true, TheoremValue::OutOfRange(msg)) = (requested, value) {
        *status = status.worst(Status::OutOfTheoremRange);
        notes.push(msg.clone());
    }
}

fn witt_strings(ring: &LaurentRing, x: &WittVec<LaurentElem>) -> Vec<String> {
    render_witt(ring, x)
}

impl ConductorJson {
    pub fn new(
        ring: &LaurentRing,
        input: Vec<String>,
        report: &ConductorReport,
        outputs: &[Output],
    ) -> Self {
        let field = ring.residue();
        let want = |o: Output| outputs.contains(&o);
        let graded = |g: Option<&GradedForm>| g.map(|g| GradedJson::new(field, g));
        let mut status = Status::Ok;
        let mut notes = Vec::new();
        note(
            &mut status,
            &mut notes,
            want(Output::LogSlope) || want(Output::LogCharPoint),
            &report.log_slope,
        );
        note(
            &mut status,
            &mut notes,
            want(Output::Slope) || want(Output::CharPoint),
            &report.slope,
        );
        let requested = |o: Output, v: Option<GradedJson>| {
            if want(o) {
                Field::Value(v)
            } else {
                Field::NotRequested
            }
        };
        let log_char_point = requested(Output::LogCharPoint, graded(report.log_char_point.value()));
        let char_point = requested(Output::CharPoint, graded(report.char_point.value()));
        let slope_field = |o: Output, t: &TheoremValue<i64>| {
            if want(o) {
                Field::Value(t.value().copied())
            } else {
                Field::NotRequested
            }
        };
        let rsw_mod = if want(Output::RswMod) {
            match &report.rsw_mod {
                RefinedModified::Absent => Field::Value(None),
                RefinedModified::Defined(g) => Field::Value(graded(Some(g))),
                RefinedModified::Unsupported(msg) => {
                    status = status.worst(Status::UnsupportedRange);
                    notes.push(msg.clone());
                    Field::Value(None)
                }
            }
        } else {
            Field::NotRequested
        };
        let nf = |n: Option<&NormalFormBGr>| {
            if want(Output::NormalForms) {
                Field::Value(n.map(|n| NormalFormJson::new(field, n)))
            } else {
                Field::NotRequested
            }
        };
        ConductorJson {
            schema: SCHEMA,
            command: "conductor",
            status,
            field: field.config().clone(),
            input,
            reduced: witt_strings(ring, &report.reduced),
            reduction_iterations: report.reduction_iterations,
            sw: want(Output::Sw).then_some(report.sw),
            rsw: if want(Output::Rsw) {
                Field::Value(graded(report.rsw.as_ref()))
            } else {
                Field::NotRequested
            },
            sw_mod: want(Output::SwMod).then_some(report.sw_mod),
            rsw_mod,
            log_slope: slope_field(Output::LogSlope, &report.log_slope),
            slope: slope_field(Output::Slope, &report.slope),
            log_char_point,
            char_point,
            rsw_normal_form: nf(report.rsw_normal_form.as_ref()),
            rsw_mod_normal_form: nf(report.rsw_mod_normal_form.as_ref()),
            notes,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorJson {
    pub schema: &'static str,
    pub command: String,
    pub status: Status,
    pub error: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sw_upper_bound: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub best: Option<Vec<String>>,
}

impl ErrorJson {
    pub fn new(command: &str, e: &Error, ring: Option<&LaurentRing>) -> Self {
        let (bound, best) = match (e, ring) {
            (
                Error::ReductionBudgetExceeded {
                    sw_upper_bound,
                    best,
                },
                Some(ring),
            ) => (Some(*sw_upper_bound), Some(witt_strings(ring, best))),
            _ => (None, None),
        };
        ErrorJson {
            schema: SCHEMA,
            command: command.to_string(),
            status: Status::of_error(e),
            error: e.to_string(),
            sw_upper_bound: bound,
            best,
        }
    }
}
