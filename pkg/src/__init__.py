# anticorrelated-walk package
