//! KP3 and KP5 position labels: conversion, decoding and orphan repair.
//!
//! ```bash
//! cargo run -p jrnn-keyphrase --example label_schemes
//! ```

use jrnn_keyphrase::corpus::{
    decode_phrases, encode_phrases, kp3_to_kp5, kp5_to_kp3, to_binary_labels, Kp3, PhraseSpan,
};

fn show<T: Copy>(labels: &[T], symbol: impl Fn(T) -> &'static str) -> String {
    labels
        .iter()
        .map(|&l| symbol(l))
        .collect::<Vec<_>>()
        .join(" ")
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // "layanan mobile banking BCA jelek" with keyphrases [1,2] and [3]
    let spans = [PhraseSpan::new(1, 2), PhraseSpan::new(3, 3)];
    let kp3 = encode_phrases(&spans, 5)?;
    let kp5 = kp3_to_kp5(&kp3);
    println!("KP3     {}", show(&kp3, Kp3::symbol));
    println!("KP5     {}", show(&kp5, |l| l.symbol()));
    println!("back    {}", show(&kp5_to_kp3(&kp5), Kp3::symbol));
    println!("binary  {:?}", to_binary_labels(&kp3));

    // A tail label without a preceding begin starts a new phrase
    let raw = [Kp3::Outside, Kp3::Tail, Kp3::Tail, Kp3::Outside, Kp3::Begin];
    let repaired: Vec<String> = decode_phrases(&raw).iter().map(|s| s.to_string()).collect();
    println!(
        "decode {} -> {}",
        show(&raw, Kp3::symbol),
        repaired.join(", ")
    );
    Ok(())
}
