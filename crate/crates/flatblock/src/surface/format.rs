//! Surface interchange format: structured UTF-8 text (JSON) with exact
//! scalar strings. Unknown fields are rejected.

use super::{build_surface, EdgeRef, Surface};
use crate::error::{Error, Result};
use crate::exactnum::{parse_scalar, Vec2};
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SurfaceFile {
    field_d: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    faces: Vec<Vec<[String; 2]>>,
    gluings: Vec<[[usize; 2]; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    marked_vertices: Vec<[usize; 2]>,
}

pub fn parse_surface(text: &str) -> Result<Surface> {
    let file: SurfaceFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let faces = file
        .faces
        .iter()
        .map(|verts| {
            verts
                .iter()
                .map(|[x, y]| {
                    Ok(Vec2::new(
                        parse_scalar(x, file.field_d)?,
                        parse_scalar(y, file.field_d)?,
                    ))
                })
                .collect::<Result<Vec<Vec2>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let gluings: Vec<(EdgeRef, EdgeRef)> = file
        .gluings
        .iter()
        .map(|[[f1, e1], [f2, e2]]| (EdgeRef::new(*f1, *e1), EdgeRef::new(*f2, *e2)))
        .collect();
    let marked: Vec<(usize, usize)> = file.marked_vertices.iter().map(|[f, c]| (*f, *c)).collect();
    let s = build_surface(file.field_d, faces, &gluings, &marked)?;
    Ok(match file.name {
        Some(n) => s.with_name(&n),
        None => s,
    })
}

pub fn serialize_surface(s: &Surface) -> String {
    let faces = (0..s.num_faces())
        .map(|f| {
            s.face(f)
                .iter()
                .map(|v| [v.x.to_string(), v.y.to_string()])
                .collect()
        })
        .collect();
    let mut gluings: Vec<[[usize; 2]; 2]> = s
        .gluing_pairs()
        .into_iter()
        .map(|(a, b)| [[a.face, a.edge], [b.face, b.edge]])
        .collect();
    gluings.sort();
    let mut marked = s.marked_corner_reps();
    marked.sort();
    let file = SurfaceFile {
        field_d: s.field(),
        name: s.name().map(str::to_string),
        faces,
        gluings,
        marked_vertices: marked.into_iter().map(|(f, c)| [f, c]).collect(),
    };
    let mut out = serde_json::to_string_pretty(&file).expect("serialization cannot fail");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::builtin;

    #[test]
    fn roundtrip_is_identity_on_canonical_form() {
        for (name, params) in [
            ("torus", vec![]),
            ("golden_l", vec![]),
            ("staircase", vec![]),
            ("octagon", vec![]),
        ] {
            let s = builtin(name, &params).unwrap();
            let text = serialize_surface(&s);
            let back = parse_surface(&text).unwrap();
            assert_eq!(serialize_surface(&back), text, "{name}");
            assert_eq!(back.genus(), s.genus());
            assert_eq!(back.area(), s.area());
        }
    }

    #[test]
    fn unknown_fields_rejected() {
        let s = builtin("torus", &[]).unwrap();
        let text = serialize_surface(&s).replace("\"field_d\"", "\"surprise\": 1,\n  \"field_d\"");
        assert!(matches!(parse_surface(&text), Err(Error::Parse(_))));
    }

    #[test]
    fn marked_vertices_survive() {
        let s = builtin("torus", &[]).unwrap();
        let mut text = serialize_surface(&s);
        text = text.replace("\"gluings\"", "\"marked_vertices\": [[0,0]],\n  \"gluings\"");
        let back = parse_surface(&text).unwrap();
        assert!(back.classes()[0].marked);
        assert!(back.classes()[0].is_singular());
        let round = serialize_surface(&back);
        assert!(round.contains("marked_vertices"));
    }
}
