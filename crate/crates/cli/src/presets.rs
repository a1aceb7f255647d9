//! Manifests shipped with the tool.

pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    pub manifest: &'static str,
}

pub const PRESETS: &[Preset] = &[
    Preset {
        name: "example1A",
        description: "C ⋉ C² with weights e^{x}, e^{-x}; lattice y-period 2π",
        manifest: include_str!("../presets/example1A.json"),
    },
    Preset {
        name: "example1B",
        description: "C ⋉ C² with weights e^{x}, e^{-x}; lattice y-period π",
        manifest: include_str!("../presets/example1B.json"),
    },
    Preset {
        name: "example1C",
        description: "C ⋉ C² with weights e^{x}, e^{-x}; lattice y-period a free symbol b",
        manifest: include_str!("../presets/example1C.json"),
    },
    Preset {
        name: "example2-pi",
        description: "C ⋉ C² with weights e^{z}, e^{-z}; lattice y-coordinates in πZ",
        manifest: include_str!("../presets/example2-pi.json"),
    },
    Preset {
        name: "example2-generic",
        description: "C ⋉ C² with weights e^{z}, e^{-z}; lattice y-coordinates free symbols",
        manifest: include_str!("../presets/example2-generic.json"),
    },
    Preset {
        name: "torus3",
        description: "complex 3-torus (trivial action)",
        manifest: include_str!("../presets/torus3.json"),
    },
];

pub fn find(name: &str) -> Option<&'static Preset> {
    PRESETS.iter().find(|p| p.name == name)
}
