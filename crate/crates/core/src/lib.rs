//! Music metadata records in, Music Meta RDF-star graphs out.
//!
//! ```
//! use musicmeta::lift::{lift_dataset, LiftConfig};
//! use musicmeta::model::{prepare, Dataset};
//! use musicmeta::serial::write_ntriples;
//! use musicmeta::validation::{run_suite, Suite};
//! use musicmeta::vocab::AlignmentScheme;
//!
//! let data = Dataset::from_json(r#"{"artists": [
//!     {"key": "David Bowie", "kind": "Musician", "name": "David Bowie"}]}"#).unwrap();
//! let config = LiftConfig {
//!     alignment_schemes: AlignmentScheme::ALL.into_iter().collect(),
//!     ..LiftConfig::default()
//! };
//! let graph = lift_dataset(&config, &prepare(data).unwrap()).unwrap();
//! let nt = write_ntriples(&graph, true);
//! assert!(nt.contains("<https://w3id.org/polifonia/resource/artist/david-bowie> \
//!     <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://erlangen-crm.org/E21_Person> ."));
//!
//! let report = run_suite(&graph, &Suite::bundled());
//! assert!(report.passed < report.total);
//! ```

pub mod rdf;
pub mod vocab;
pub mod model;
pub mod lift;
pub mod serial;
pub mod validation;
