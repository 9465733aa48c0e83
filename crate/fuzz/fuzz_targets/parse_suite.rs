#![no_main]

use libfuzzer_sys::fuzz_target;
use musicmeta::rdf::Graph;
use musicmeta::validation::{run_suite, Suite};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(suite) = Suite::from_json(text) {
        let again = Suite::from_json(&suite.to_json()).expect("serialized suite reloads");
        assert_eq!(again, suite);
        let _ = run_suite(&Graph::new(), &suite);
    }
});
