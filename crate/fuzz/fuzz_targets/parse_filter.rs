#![no_main]

use libfuzzer_sys::fuzz_target;
use musicmeta::rdf::{Binding, Literal, Term};
use musicmeta::validation::Filter;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(filter) = Filter::parse(text) {
        let mut binding = Binding::new();
        for (i, var) in filter.variables().into_iter().enumerate() {
            let value = if i % 2 == 0 { Literal::string("1977") } else { Literal::new("x", None, Some("en")).unwrap() };
            binding.insert(var.to_string(), Term::Literal(value));
        }
        let _ = filter.eval(&binding);
        let _ = filter.eval(&Binding::new());
    }
});
