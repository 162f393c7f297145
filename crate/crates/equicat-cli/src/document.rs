//! Action documents: named complexes with permutation generators.
//!
//! Parsing is done against `serde_json::Value` by hand so that every
//! rejection carries the path of the offending field.

use std::collections::BTreeMap;

use anyhow::Result;
use serde_json::Value;

use equicat_core::complex::Complex;
use equicat_core::perm::{Perm, PermGroup, Vertex, DEFAULT_ORDER_CAP};
use equicat_core::GComplex;

/// A parse/validation failure with the JSON path that caused it.
#[derive(Debug)]
pub struct DocumentError {
    pub path: String,
    pub message: String,
}

impl std::fmt::Display for DocumentError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

impl std::error::Error for DocumentError {}

fn err<T>(path: &str, message: impl Into<String>) -> Result<T, DocumentError> {
    Err(DocumentError {
        path: path.to_string(),
        message: message.into(),
    })
}

#[derive(Debug)]
pub struct ActionDocument {
    pub name: String,
    pub complex: Complex,
    pub group: PermGroup,
    pub regularize: bool,
}

impl ActionDocument {
    pub fn parse(text: &str) -> Result<ActionDocument, DocumentError> {
        let value: Value = match serde_json::from_str(text) {
            Ok(v) => v,
            Err(e) => return err("$", format!("invalid JSON: {e}")),
        };
        let root = match value.as_object() {
            Some(o) => o,
            None => return err("$", "document must be an object"),
        };
        let name = match root.get("name") {
            Some(Value::String(s)) => s.clone(),
            Some(_) => return err("$.name", "must be a string"),
            None => "unnamed".to_string(),
        };

        let complex_obj = match root.get("complex") {
            Some(Value::Object(o)) => o,
            _ => return err("$.complex", "missing or not an object"),
        };
        let vertices = match complex_obj.get("vertices") {
            Some(Value::Array(a)) => a,
            _ => return err("$.complex.vertices", "missing or not an array"),
        };
        let mut vertex_names = Vec::with_capacity(vertices.len());
        let mut index: BTreeMap<String, Vertex> = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            let path = format!("$.complex.vertices[{i}]");
            let s = match v.as_str() {
                Some(s) => s.to_string(),
                None => return err(&path, "vertex name must be a string"),
            };
            if index.insert(s.clone(), i as Vertex).is_some() {
                return err(&path, format!("duplicate vertex name {s:?}"));
            }
            vertex_names.push(s);
        }

        let simplices_val = match complex_obj.get("simplices") {
            Some(Value::Array(a)) => a,
            _ => return err("$.complex.simplices", "missing or not an array"),
        };
        let mut simplices = Vec::with_capacity(simplices_val.len());
        for (i, s) in simplices_val.iter().enumerate() {
            let path = format!("$.complex.simplices[{i}]");
            let arr = match s.as_array() {
                Some(a) => a,
                None => return err(&path, "simplex must be an array of vertex names"),
            };
            let mut simplex = Vec::with_capacity(arr.len());
            for (j, v) in arr.iter().enumerate() {
                let vpath = format!("{path}[{j}]");
                let name = match v.as_str() {
                    Some(n) => n,
                    None => return err(&vpath, "vertex reference must be a string"),
                };
                match index.get(name) {
                    Some(&idx) => simplex.push(idx),
                    None => return err(&vpath, format!("unknown vertex {name:?}")),
                }
            }
            simplices.push(simplex);
        }
        let complex = match Complex::from_maximal(vertex_names.len(), &simplices) {
            Ok(c) => c,
            Err(e) => return err("$.complex.simplices", format!("{e}")),
        };

        let mut generators = Vec::new();
        if let Some(group_val) = root.get("group") {
            let group_obj = match group_val.as_object() {
                Some(o) => o,
                None => return err("$.group", "must be an object"),
            };
            if let Some(gens) = group_obj.get("generators") {
                let gens = match gens.as_array() {
                    Some(a) => a,
                    None => return err("$.group.generators", "must be an array"),
                };
                for (i, g) in gens.iter().enumerate() {
                    let path = format!("$.group.generators[{i}]");
                    generators.push(parse_generator(&path, g, &index, vertex_names.len())?);
                }
            }
        }
        let group =
            match PermGroup::from_generators(vertex_names.len(), generators, DEFAULT_ORDER_CAP) {
                Ok(g) => g,
                Err(e) => return err("$.group.generators", format!("{e}")),
            };

        let regularize = match root.get("options").and_then(|o| o.get("regularize")) {
            Some(Value::Bool(b)) => *b,
            Some(_) => return err("$.options.regularize", "must be a boolean"),
            None => true,
        };

        Ok(ActionDocument {
            name,
            complex,
            group,
            regularize,
        })
    }

    /// Build the G-complex, regularizing when the document asks for it.
    pub fn to_gcomplex(&self) -> Result<GComplex> {
        let gc = GComplex::new(self.complex.clone(), self.group.clone())
            .map_err(|e| anyhow::anyhow!("invalid action: {e}"))?;
        if self.regularize {
            gc.regularize()
                .map_err(|e| anyhow::anyhow!("regularization failed: {e}"))
        } else {
            Ok(gc)
        }
    }
}

/// A generator is either `{"cycles": [[names...], ...]}` or
/// `{"images": [names...]}`.
fn parse_generator(
    path: &str,
    value: &Value,
    index: &BTreeMap<String, Vertex>,
    degree: usize,
) -> Result<Perm, DocumentError> {
    let obj = match value.as_object() {
        Some(o) => o,
        None => return err(path, "generator must be an object with cycles or images"),
    };
    if let Some(cycles_val) = obj.get("cycles") {
        let cycles_arr = match cycles_val.as_array() {
            Some(a) => a,
            None => return err(&format!("{path}.cycles"), "must be an array of cycles"),
        };
        let mut cycles = Vec::new();
        for (i, c) in cycles_arr.iter().enumerate() {
            let cpath = format!("{path}.cycles[{i}]");
            let arr = match c.as_array() {
                Some(a) => a,
                None => return err(&cpath, "cycle must be an array of vertex names"),
            };
            let mut cycle = Vec::new();
            for (j, v) in arr.iter().enumerate() {
                let vpath = format!("{cpath}[{j}]");
                let name = match v.as_str() {
                    Some(n) => n,
                    None => return err(&vpath, "vertex reference must be a string"),
                };
                match index.get(name) {
                    Some(&idx) => cycle.push(idx),
                    None => return err(&vpath, format!("unknown vertex {name:?}")),
                }
            }
            cycles.push(cycle);
        }
        return match Perm::from_cycles(degree, &cycles) {
            Ok(p) => Ok(p),
            Err(e) => err(&format!("{path}.cycles"), format!("{e}")),
        };
    }
    if let Some(images_val) = obj.get("images") {
        let arr = match images_val.as_array() {
            Some(a) => a,
            None => return err(&format!("{path}.images"), "must be an array of vertex names"),
        };
        if arr.len() != degree {
            return err(
                &format!("{path}.images"),
                format!("expected {degree} images, got {}", arr.len()),
            );
        }
        let mut images = Vec::with_capacity(degree);
        for (j, v) in arr.iter().enumerate() {
            let vpath = format!("{path}.images[{j}]");
            let name = match v.as_str() {
                Some(n) => n,
                None => return err(&vpath, "vertex reference must be a string"),
            };
            match index.get(name) {
                Some(&idx) => images.push(idx),
                None => return err(&vpath, format!("unknown vertex {name:?}")),
            }
        }
        return match Perm::from_images(images) {
            Ok(p) => Ok(p),
            Err(e) => err(&format!("{path}.images"), format!("{e}")),
        };
    }
    err(path, "generator needs a \"cycles\" or \"images\" field")
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQUARE: &str = r#"{
        "name": "square-reflection",
        "complex": {
            "vertices": ["a", "b", "c", "d"],
            "simplices": [["a","b"], ["b","c"], ["c","d"], ["a","d"]]
        },
        "group": { "generators": [ {"cycles": [["b","d"]]} ] },
        "options": { "regularize": false }
    }"#;

    #[test]
    fn square_document_parses() {
        let doc = ActionDocument::parse(SQUARE).unwrap();
        assert_eq!(doc.name, "square-reflection");
        assert_eq!(doc.complex.vertex_count(), 4);
        assert_eq!(doc.group.order(), 2);
        let gc = doc.to_gcomplex().unwrap();
        assert!(gc.is_regular_action());
    }

    #[test]
    fn unknown_vertex_is_reported_with_path() {
        let bad = SQUARE.replace("[\"a\",\"d\"]", "[\"a\",\"e\"]");
        let e = ActionDocument::parse(&bad).unwrap_err();
        assert!(e.path.contains("$.complex.simplices[3]"), "{e}");
    }

    #[test]
    fn malformed_simplex_is_reported_with_path() {
        let bad = SQUARE.replace("[\"a\",\"b\"], ", "5, ");
        let e = ActionDocument::parse(&bad).unwrap_err();
        assert_eq!(e.path, "$.complex.simplices[0]");
    }

    #[test]
    fn images_form_is_accepted() {
        let doc_text = SQUARE.replace(
            "{\"cycles\": [[\"b\",\"d\"]]}",
            "{\"images\": [\"a\",\"d\",\"c\",\"b\"]}",
        );
        let doc = ActionDocument::parse(&doc_text).unwrap();
        assert_eq!(doc.group.order(), 2);
    }
}
