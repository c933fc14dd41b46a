//! Serialization helpers shared by report records.

use std::fmt::Display;

use serde::Serializer;

/// Serializes any `Display` value (rationals, groups) as its printed form.
pub fn display_string<T: Display, S: Serializer>(value: &T, serializer: S) -> Result<S::Ok, S::Error> {
    serializer.collect_str(value)
}

/// Like [`display_string`] for optional values.
pub fn display_option<T: Display, S: Serializer>(value: &Option<T>, serializer: S) -> Result<S::Ok, S::Error> {
    match value {
        Some(v) => serializer.collect_str(v),
        None => serializer.serialize_none(),
    }
}
