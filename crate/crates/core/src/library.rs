//! The bundled cone and arrangement library, read from the JSON files under
//! `data/` at the workspace root.

use crate::arrangement::Arrangement;
use crate::cone::Cone;
use crate::error::Result;

pub const CONE_FILES: &[(&str, &str)] = &[
    ("orthant1", include_str!("../../../data/cones/orthant1.json")),
    ("orthant2", include_str!("../../../data/cones/orthant2.json")),
    ("orthant3", include_str!("../../../data/cones/orthant3.json")),
    ("orthant4", include_str!("../../../data/cones/orthant4.json")),
    ("orthant5", include_str!("../../../data/cones/orthant5.json")),
    ("orthant6", include_str!("../../../data/cones/orthant6.json")),
    ("zero3", include_str!("../../../data/cones/zero3.json")),
    ("full2", include_str!("../../../data/cones/full2.json")),
    ("line2", include_str!("../../../data/cones/line2.json")),
    ("plane3", include_str!("../../../data/cones/plane3.json")),
    ("ray3", include_str!("../../../data/cones/ray3.json")),
    ("half-plane", include_str!("../../../data/cones/half-plane.json")),
    ("half-space3", include_str!("../../../data/cones/half-space3.json")),
    ("wedge-acute", include_str!("../../../data/cones/wedge-acute.json")),
    ("wedge-obtuse", include_str!("../../../data/cones/wedge-obtuse.json")),
    ("square-cone", include_str!("../../../data/cones/square-cone.json")),
    ("pentagon-cone", include_str!("../../../data/cones/pentagon-cone.json")),
    ("simplicial3", include_str!("../../../data/cones/simplicial3.json")),
    ("simplicial4", include_str!("../../../data/cones/simplicial4.json")),
    ("cube-cone4", include_str!("../../../data/cones/cube-cone4.json")),
    ("cube-cone4-polar", include_str!("../../../data/cones/cube-cone4-polar.json")),
    ("braid-chamber3", include_str!("../../../data/cones/braid-chamber3.json")),
    ("quadrant-x-line", include_str!("../../../data/cones/quadrant-x-line.json")),
    ("wedge-x-ray", include_str!("../../../data/cones/wedge-x-ray.json")),
    ("wedge-slab4", include_str!("../../../data/cones/wedge-slab4.json")),
];

pub const ARRANGEMENT_FILES: &[(&str, &str)] = &[
    ("braid3", include_str!("../../../data/arrangements/braid3.json")),
    ("braid4", include_str!("../../../data/arrangements/braid4.json")),
    ("bc2", include_str!("../../../data/arrangements/bc2.json")),
    ("bc3", include_str!("../../../data/arrangements/bc3.json")),
    ("d3", include_str!("../../../data/arrangements/d3.json")),
    ("d4", include_str!("../../../data/arrangements/d4.json")),
    ("three-lines", include_str!("../../../data/arrangements/three-lines.json")),
    ("four-lines", include_str!("../../../data/arrangements/four-lines.json")),
    ("coordinate3", include_str!("../../../data/arrangements/coordinate3.json")),
    ("generic-4-3", include_str!("../../../data/arrangements/generic-4-3.json")),
    ("generic-5-3", include_str!("../../../data/arrangements/generic-5-3.json")),
    ("pencil-plus-plane", include_str!("../../../data/arrangements/pencil-plus-plane.json")),
    ("single-plane3", include_str!("../../../data/arrangements/single-plane3.json")),
];

pub fn cone_library() -> Result<Vec<(&'static str, Cone)>> {
    CONE_FILES.iter().map(|(name, src)| Ok((*name, Cone::from_json_str(src)?))).collect()
}

pub fn arrangement_library() -> Result<Vec<(&'static str, Arrangement)>> {
    ARRANGEMENT_FILES.iter().map(|(name, src)| Ok((*name, Arrangement::from_json_str(src)?))).collect()
}

pub fn library_cone(name: &str) -> Option<Cone> {
    CONE_FILES.iter().find(|(n, _)| *n == name).and_then(|(_, src)| Cone::from_json_str(src).ok())
}

pub fn library_arrangement(name: &str) -> Option<Arrangement> {
    ARRANGEMENT_FILES.iter().find(|(n, _)| *n == name).and_then(|(_, src)| Arrangement::from_json_str(src).ok())
}
