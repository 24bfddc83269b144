#![allow(dead_code)]

use std::path::PathBuf;

use enigma_core::machine::{
    Key, MachineConfig, MachineDefinition, MachineState, Model, PlugboardSetting, ReflectorSpec, RotorSpec,
    StaticRotorSpec, SteppingMode,
};
use enigma_core::{Letter, Permutation};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

pub fn load(name: &str) -> MachineDefinition {
    std::fs::read_to_string(data_path(name)).unwrap().parse().unwrap()
}

fn shuffled<R: Rng>(rng: &mut R) -> Vec<Letter> {
    let mut v: Vec<Letter> = Letter::all().collect();
    v.shuffle(rng);
    v
}

pub fn random_permutation<R: Rng>(rng: &mut R) -> Permutation {
    Permutation::from_images(&shuffled(rng)).unwrap()
}

pub fn random_pairs<R: Rng>(rng: &mut R, count: usize) -> Vec<(Letter, Letter)> {
    shuffled(rng).chunks(2).take(count).map(|c| (c[0], c[1])).collect()
}

/// Five moving rotors R0..R4, a static rotor S and a reflector UKW, all random.
pub fn random_definition<R: Rng>(rng: &mut R) -> MachineDefinition {
    let mut def = MachineDefinition::default();
    for i in 0..5 {
        let notch_count = rng.gen_range(1..=2);
        let notches = shuffled(rng).into_iter().take(notch_count).collect();
        def.add_rotor(RotorSpec { id: format!("R{i}"), wiring: random_permutation(rng), notches }).unwrap();
    }
    def.add_static(StaticRotorSpec { id: "S".into(), wiring: random_permutation(rng) }).unwrap();
    let reflector = Permutation::involution_from_pairs(&random_pairs(rng, 13)).unwrap();
    def.add_reflector(ReflectorSpec { id: "UKW".into(), wiring: reflector }).unwrap();
    def
}

/// A random valid key for a definition from [`random_definition`].
pub fn random_key<R: Rng>(rng: &mut R) -> Key {
    let model = if rng.gen_bool(0.5) { Model::Army3 } else { Model::Naval4 };
    let mut ids: Vec<String> = (0..5).map(|i| format!("R{i}")).collect();
    ids.shuffle(rng);
    ids.truncate(3);
    if model == Model::Naval4 {
        ids.insert(0, "S".into());
    }
    let n = model.rotor_count();
    let random_letters = |rng: &mut R| (0..n).map(|_| Letter::new(rng.gen_range(0..26)).unwrap()).collect::<Vec<_>>();
    let ring_settings = random_letters(rng);
    let positions = random_letters(rng);
    let cables = rng.gen_range(0..=13);
    Key {
        config: MachineConfig {
            model,
            rotors: ids,
            ring_settings,
            plugboard: PlugboardSetting::new(random_pairs(rng, cables)),
            reflector: "UKW".into(),
            stepping_mode: if rng.gen_bool(0.5) { SteppingMode::Odometer } else { SteppingMode::HistoricalDoubleStep },
        },
        state: MachineState::new(positions),
    }
}

pub fn random_message<R: Rng>(rng: &mut R, len: usize) -> String {
    (0..len).map(|_| (b'A' + rng.gen_range(0..26u8)) as char).collect()
}
