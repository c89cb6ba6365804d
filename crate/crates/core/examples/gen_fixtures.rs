fn main() {
    let dir = std::path::Path::new("/tmp/oracle/digitgen");
    let (im, _la) = vqnn_core::data::synth::write_synthetic_digit_idx(dir, 64, 777).unwrap();
    vqnn_core::data::synth::write_synthetic_crack_folder(std::path::Path::new("/tmp/oracle/crackgen"), 4, 64, 778).unwrap();
    println!("{}", im.display());
}
