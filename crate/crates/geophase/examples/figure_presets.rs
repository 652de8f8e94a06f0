//! Runs a few entries of the preset catalog into ./preset_out.
//!
//! Run with: cargo run --release -p geophase --example figure_presets

use std::path::Path;

use geophase::presets::{run_preset, PresetOptions, PRESET_NAMES};

fn main() {
    println!("available presets: {}", PRESET_NAMES.join(", "));

    let out = Path::new("preset_out");
    let opts = PresetOptions::default();
    for name in ["fig1", "fig2", "fig5", "fig11"] {
        let files = run_preset(name, out, &opts).unwrap();
        println!("{name}:");
        for f in files {
            println!("  {}", f.display());
        }
    }
    println!("each sidecar records every parameter the preset used");
}
