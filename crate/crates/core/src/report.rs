//! Decode outcome reporting: candidate lists, per-phase wall times and a few
//! diagnostic counters.

use crate::curve::RingElement;
use crate::field::Fel;
use serde::{Deserialize, Serialize};

/// Wall time per decoding phase, in seconds. The categories mirror the usual
/// breakdown of these decoders: matrix construction, the module-minimisation
/// core, the division or root-finding step, representation conversions, and
/// one-off precomputation tied to the code itself.
#[derive(Clone, Copy, Debug, Default, Serialize, Deserialize)]
pub struct PhaseTimings {
    pub precompute: f64,
    pub build_matrix: f64,
    pub module_min: f64,
    pub division_rootfind: f64,
    pub conversions: f64,
}

impl PhaseTimings {
    pub fn total(&self) -> f64 {
        self.precompute
            + self.build_matrix
            + self.module_min
            + self.division_rootfind
            + self.conversions
    }

    /// Is module minimisation the single largest phase?
    pub fn module_min_dominant(&self) -> bool {
        self.module_min >= self.precompute
            && self.module_min >= self.build_matrix
            && self.module_min >= self.division_rootfind
            && self.module_min >= self.conversions
    }

    pub const LABELS: [&'static str; 5] = [
        "Module minimisation",
        "Division / Root-finding",
        "Build matrix",
        "Conversions",
        "Precomputation",
    ];

    /// Values in the order of [`Self::LABELS`].
    pub fn by_label(&self) -> [f64; 5] {
        [
            self.module_min,
            self.division_rootfind,
            self.build_matrix,
            self.conversions,
            self.precompute,
        ]
    }
}

/// One decoded candidate: the message polynomial and its codeword.
#[derive(Clone, Debug)]
pub struct Candidate {
    pub message: RingElement,
    pub codeword: Vec<Fel>,
}

/// Counters that make failed decodes diagnosable.
#[derive(Clone, Debug, Default)]
pub struct Diagnostics {
    /// Order of the extracted error locator (power decoding).
    pub locator_order: Option<i64>,
    /// Weighted order of the interpolation polynomial (GS decoding).
    pub interpolation_order: Option<i64>,
    /// Number of Mulders–Storjohann simple transformations.
    pub reduction_steps: u64,
    /// Root candidates examined before the distance filter (GS decoding).
    pub root_candidates: usize,
    /// Hamming distance from the returned codeword to the received word.
    pub distance: Option<usize>,
}

/// Outcome of one decoding attempt. `success` means the decoder produced at
/// least one candidate; whether a candidate matches the *sent* word is the
/// simulation harness's business.
#[derive(Clone, Debug)]
pub struct DecodeReport {
    pub success: bool,
    pub candidates: Vec<Candidate>,
    pub timings: PhaseTimings,
    pub diagnostics: Diagnostics,
}
