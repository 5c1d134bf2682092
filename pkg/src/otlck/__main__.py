from otlck.cli import main

main()
