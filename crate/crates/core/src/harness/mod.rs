//! Random automata, campaigns and failure artifacts.

mod campaign;
mod generator;
mod search;

pub use campaign::{
    campaign, check_automaton, replay, sample_accepted, write_artifact, write_artifacts,
    AmbiguityVerdict, Artifact, BoundCheck, BuildOutcome, CampaignParams, CampaignRecord,
    CampaignReport, CheckConfig, ConstructionRecord, Failure, ReplayError, ReplayOutcome,
    ARTIFACT_INPUT, ARTIFACT_RECORD,
};
pub use generator::{corpus_params, letters, mix, random_weak_awa, GenError, GenParams, SccSpec};
pub use search::{brv_candidate, search_brv_ambiguity, BrvAmbiguity};
