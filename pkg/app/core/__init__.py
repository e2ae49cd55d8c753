# Core configuration and utilities