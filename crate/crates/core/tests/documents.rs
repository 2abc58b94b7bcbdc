use fusionaf::document::{parse, ParseError};
use fusionaf::module_cat::verify_action;
use fusionaf::registry;

#[test]
fn registry_documents_round_trip_byte_exact() {
    for e in registry::examples() {
        let text = e.document.emit();
        let parsed = parse(&text).unwrap_or_else(|err| panic!("{}: {err}", e.name));
        assert_eq!(parsed, e.document, "{}", e.name);
        assert_eq!(parsed.emit(), text, "{}", e.name);
    }
}

#[test]
fn registry_documents_validate() {
    for e in registry::examples() {
        let action = e.document.to_action().unwrap();
        assert!(action.ring().verify().is_empty(), "{}", e.name);
        assert!(action.dual_ring().verify().is_empty(), "{}", e.name);
        assert!(verify_action(&action).is_empty(), "{}", e.name);
        assert_eq!(e.document.source.as_deref(), Some("registry"));
    }
}

#[test]
fn unknown_keys_are_rejected_with_paths() {
    let text = registry::example("fib_regular")
        .unwrap()
        .document
        .emit()
        .replacen("\"name\"", "\"colour\": 1,\n  \"name\"", 1);
    match parse(&text) {
        Err(ParseError::Schema(errors)) => {
            assert!(
                errors.iter().any(|e| e.path.contains("colour")),
                "{errors:?}"
            );
        }
        other => panic!("{other:?}"),
    }
}
