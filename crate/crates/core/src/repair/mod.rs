// SPDX-License-Identifier: Apache-2.0

//! Trace repair of a single failed position.

mod protocol;
mod scheme;

pub use protocol::{
    bandwidth, collect_responses, helper_response, max_bandwidth, reconstruct, run_repair, Bandwidth,
    HelperPlanRecord, HelperResponse, MaxBandwidth, RepairTranscript, ResponseRecord, SchemeRecord,
    TranscriptRecord, EXHAUSTIVE_LIMIT,
};
pub use scheme::{DualSource, HelperPlan, RepairScheme, SchemeOptions, Variant};
