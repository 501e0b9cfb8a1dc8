from geninv.cli import main

main()
