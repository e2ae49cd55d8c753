# Image Visibility Toolkit package
