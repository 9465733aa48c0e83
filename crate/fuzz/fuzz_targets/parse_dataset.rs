#![no_main]

use libfuzzer_sys::fuzz_target;
use musicmeta::lift::{lift_dataset, LiftConfig};
use musicmeta::model::{prepare, Dataset};
use musicmeta::vocab::AlignmentScheme;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(dataset) = Dataset::from_json(text) else {
        return;
    };
    let Ok(resolved) = prepare(dataset) else {
        return;
    };
    let config = LiftConfig {
        alignment_schemes: AlignmentScheme::ALL.into_iter().collect(),
        ..LiftConfig::default()
    };
    let _ = lift_dataset(&config, &resolved);
});
