# Pipeline services module
