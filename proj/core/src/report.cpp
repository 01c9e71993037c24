namespace e2hom {}
