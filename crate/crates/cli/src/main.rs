fn main() {
    println!("leoscope");
}
