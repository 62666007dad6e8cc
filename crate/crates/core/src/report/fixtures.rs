//! Job files shipped with the library.

pub const NAMES: &[&str] = &[
    "example_7_5",
    "example_7_5_sylow",
    "example_7_3_diagonal",
    "example_7_4",
    "example_dp4_involutions",
];

/// Contents of a shipped job file, by name with or without `.json`.
pub fn fixture(name: &str) -> Option<&'static str> {
    Some(match name.strip_suffix(".json").unwrap_or(name) {
        "example_7_5" => include_str!("../../fixtures/example_7_5.json"),
        "example_7_5_sylow" => include_str!("../../fixtures/example_7_5_sylow.json"),
        "example_7_3_diagonal" => include_str!("../../fixtures/example_7_3_diagonal.json"),
        "example_7_4" => include_str!("../../fixtures/example_7_4.json"),
        "example_dp4_involutions" => include_str!("../../fixtures/example_dp4_involutions.json"),
        _ => return None,
    })
}
