//! JSON Schema documents (draft 2020-12) of the CLI reports.

/// `(name, document)`; the name is the command with spaces replaced by `-`.
pub const SCHEMAS: &[(&str, &str)] = &[
    ("verify", include_str!("../schemas/verify.schema.json")),
    ("syzygy-compute", include_str!("../schemas/syzygy-compute.schema.json")),
    ("syzygy-check", include_str!("../schemas/syzygy-check.schema.json")),
    ("hessian", include_str!("../schemas/hessian.schema.json")),
    ("current-check", include_str!("../schemas/current-check.schema.json")),
    ("ma-solve", include_str!("../schemas/ma-solve.schema.json")),
    ("ma-manufacture", include_str!("../schemas/ma-manufacture.schema.json")),
    ("ma-diagnose", include_str!("../schemas/ma-diagnose.schema.json")),
    ("error", include_str!("../schemas/error.schema.json")),
];

pub fn schema(name: &str) -> Option<&'static str> {
    SCHEMAS.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// Schema a report should satisfy: `error` when it carries an error,
/// otherwise the one named after its `command`.
pub fn schema_for_report(report: &serde_json::Value) -> Option<&'static str> {
    if report.get("error").is_some() {
        return schema("error");
    }
    schema(&report.get("command")?.as_str()?.replace(' ', "-"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schemas_are_json_objects() {
        for (name, text) in SCHEMAS {
            let v: serde_json::Value = serde_json::from_str(text).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(v["type"], "object", "{name}");
        }
    }
}
