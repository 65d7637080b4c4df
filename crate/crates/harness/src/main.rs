fn main() {
    println!("exactrep");
}
