//! Canonical single-line text form of a configuration:
//! `{"cursor":<int>,"lamps":[<ints ascending>]}`.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::group::{Configuration, Position};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Wire {
    cursor: Position,
    lamps: Vec<Position>,
}

impl Serialize for Configuration {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        Wire { cursor: self.cursor(), lamps: self.lamps().to_vec() }.serialize(serializer)
    }
}

pub fn encode(c: &Configuration) -> String {
    let wire = Wire { cursor: c.cursor(), lamps: c.lamps().to_vec() };
    serde_json::to_string(&wire).expect("configuration serialization is infallible")
}

pub fn decode(text: &str) -> Result<Configuration, Error> {
    let wire: Wire = serde_json::from_str(text.trim()).map_err(|e| Error::Input {
        position: format!("line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    from_wire(wire)
}

fn from_wire(wire: Wire) -> Result<Configuration, Error> {
    for (i, w) in wire.lamps.windows(2).enumerate() {
        if w[0] >= w[1] {
            let what = if w[0] == w[1] { "duplicate" } else { "unsorted" };
            return Err(Error::Input {
                position: format!("lamps[{}]", i + 1),
                message: format!("{what} lamp {} after {}", w[1], w[0]),
            });
        }
    }
    Ok(Configuration::from_sorted(wire.lamps, wire.cursor).expect("checked ascending"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn encodes_canonically() {
        assert_eq!(encode(&Configuration::identity()), r#"{"cursor":0,"lamps":[]}"#);
        let c = Configuration::new([2, -2, 1], 0);
        assert_eq!(encode(&c), r#"{"cursor":0,"lamps":[-2,1,2]}"#);
        assert_eq!(decode(r#"{"cursor":0,"lamps":[-2,1,2]}"#).unwrap(), c);
    }

    #[test]
    fn rejects_bad_input() {
        let dup = decode(r#"{"cursor":0,"lamps":[1,1]}"#).unwrap_err();
        assert!(dup.to_string().contains("lamps[1]"), "{dup}");
        assert!(decode(r#"{"cursor":0,"lamps":[2,1]}"#).is_err());
        assert!(decode(r#"{"cursor":0.5,"lamps":[]}"#).is_err());
        assert!(decode(r#"{"cursor":0,"lamps":["x"]}"#).is_err());
        assert!(decode(r#"{"cursor":0}"#).is_err());
        assert!(decode(r#"{"cursor":0,"lamps":[],"extra":1}"#).is_err());
        let e = decode("{\"cursor\":0,").unwrap_err();
        assert!(e.to_string().contains("column"), "{e}");
    }

    proptest! {
        #[test]
        fn round_trip(lamps in proptest::collection::vec(-50i64..50, 0..12), cursor in -60i64..60) {
            let c = Configuration::new(lamps, cursor);
            prop_assert_eq!(decode(&encode(&c)).unwrap(), c);
        }
    }
}
